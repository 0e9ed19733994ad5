// State factories: Schmidt and three-qubit canonical forms, GHZ and Werner
// mixtures, oscillator angular-momentum eigenstates, two-mode cat states,
// two-photon polarization states and seeded random fixtures.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "srpt/hilbert.hpp"

namespace srpt {

// Normalized sum_i c_i |i>|i> on (d1, d2).
StateVector schmidt_state(std::span<const Complex> coeffs, std::size_t d1, std::size_t d2);
StateVector schmidt_state(std::initializer_list<Complex> coeffs, std::size_t d1, std::size_t d2);

// l0|000> + l1 e^{i phase}|100> + l2|101> + l3|110> + l4|111>, normalized.
StateVector acin_state(double l0, double l1, double l2, double l3, double l4, double phase = 0.0);

// (|0...0> + |1...1>)/sqrt 2 on N qubits.
StateVector ghz(std::size_t n_qubits);

DensityMatrix maximally_mixed(const HilbertSpace& space);
// x |psi><psi| + (1 - x) 1/d.
DensityMatrix werner(const StateVector& psi, double x);
DensityMatrix werner_ghz(std::size_t n_qubits, double x);

// Eigenstate of L_z = i(a b^dag - a^dag b) with n quanta in total, expanded
// as sum_i coeffs[i] |i, n-i>.
struct Oscillator2dEigenstate {
  std::size_t n;
  int m;
  std::vector<Complex> coeffs;
  StateVector vector;  // on (n+1, n+1), or (2, 2) when n = 0
  double residual;     // || L_z v - m v ||
};

// Common eigenstate of L^2 and L_z with n quanta in total, expanded as
// sum_{i,j} coeffs[i][j] |j, i-j, n-i>, 0 <= j <= i <= n.
struct Oscillator3dEigenstate {
  std::size_t n;
  int l;
  int m;
  std::vector<std::vector<Complex>> coeffs;
  StateVector vector;  // on (n+1)^3, or (2,2,2) when n = 0
  double lz_residual;
  double l2_residual;
};

// Sorted by m; eigenvector phase fixed so the first non-zero coefficient is
// real and positive.
std::vector<Oscillator2dEigenstate> oscillator2d_eigenstates(std::size_t n);
// Sorted by (l descending, m ascending), same phase convention.
std::vector<Oscillator3dEigenstate> oscillator3d_eigenstates(std::size_t n);

// Smallest truncation that keeps the discarded coherent weight negligible for
// the given amplitude: ceil(r^2 + 7 r + 10).
std::size_t min_cat_truncation(double amplitude);

Vector coherent_state(Complex alpha, std::size_t truncation);

// (|alpha, beta> + |-alpha, -beta>)/N on two modes truncated to `truncation` levels.
StateVector cat_state(double alpha, double beta, std::size_t truncation);

// alpha|0,2> + beta|1,1> + gamma|2,0> on (3,3), normalized.
StateVector multiphoton_state(Complex alpha, Complex beta, Complex gamma);

// Normalized complex Gaussian amplitudes.
StateVector random_pure(const HilbertSpace& space, std::uint64_t seed);
// Tensor product of independent random pure states, one per subsystem.
StateVector random_product_pure(const HilbertSpace& space, std::uint64_t seed);
// Convex mixture of `terms` random product pure states with Dirichlet(1,...,1)
// weights.
DensityMatrix random_separable(const HilbertSpace& space, std::size_t terms, std::uint64_t seed);

}  // namespace srpt
