// Dense complex tensor algebra over multipartite Hilbert spaces.
//
// Basis ordering is row-major: |i0 i1 ... i_{n-1}>, subsystem 0 is the
// slowest-varying index. Every type is an immutable value.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace srpt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kImaginaryTol = 1e-10;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class HilbertSpace {
 public:
  explicit HilbertSpace(std::vector<std::size_t> dims);
  HilbertSpace(std::initializer_list<std::size_t> dims)
      : HilbertSpace(std::vector<std::size_t>(dims)) {}

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t subsystems() const { return dims_.size(); }
  std::size_t dim(std::size_t k) const { return dims_.at(k); }
  std::size_t total_dim() const { return total_; }

  // Mixed-radix decomposition of a flat basis index.
  std::vector<std::size_t> digits(std::size_t index) const;
  std::size_t index(std::span<const std::size_t> digits) const;
  std::size_t index(std::initializer_list<std::size_t> digits) const {
    return index(std::span<const std::size_t>(digits.begin(), digits.size()));
  }

  // Tensor product of spaces: subsystem lists are concatenated.
  HilbertSpace operator*(const HilbertSpace& other) const;
  bool operator==(const HilbertSpace& other) const { return dims_ == other.dims_; }

  std::string to_string() const;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

// Unit-norm pure state.
class StateVector {
 public:
  StateVector(HilbertSpace space, Vector amplitudes);

  // Rescales to unit norm; throws std::invalid_argument on a zero vector.
  static StateVector normalized(HilbertSpace space, Vector amplitudes);
  static StateVector basis(HilbertSpace space, std::span<const std::size_t> digits);
  static StateVector basis(HilbertSpace space, std::initializer_list<std::size_t> digits) {
    return basis(std::move(space), std::span<const std::size_t>(digits.begin(), digits.size()));
  }

  const HilbertSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(std::initializer_list<std::size_t> digits) const {
    return amplitudes_(static_cast<Eigen::Index>(space_.index(digits)));
  }

 private:
  HilbertSpace space_;
  Vector amplitudes_;
};

// Hermitian operator.
class Observable {
 public:
  Observable(HilbertSpace space, Matrix matrix);
  // Single-subsystem observable; the space is (rows).
  explicit Observable(Matrix matrix);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

  Observable operator+(const Observable& other) const;
  Observable operator-(const Observable& other) const;
  Observable operator*(double scale) const;
  friend Observable operator*(double scale, const Observable& o) { return o * scale; }

 private:
  HilbertSpace space_;
  Matrix matrix_;
};

class DensityMatrix;
DensityMatrix density_from_pure(const StateVector& psi);

struct WeightedState;
DensityMatrix mix(std::span<const WeightedState> terms);

// Hermitian, unit-trace, positive semidefinite operator.
class DensityMatrix {
 public:
  // Validates Hermiticity, trace and positivity (the last via an eigensolver).
  DensityMatrix(HilbertSpace space, Matrix matrix);

  const HilbertSpace& space() const { return space_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  struct Trusted {};
  DensityMatrix(HilbertSpace space, Matrix matrix, Trusted);

  friend DensityMatrix density_from_pure(const StateVector& psi);
  friend DensityMatrix mix(std::span<const WeightedState> terms);

  HilbertSpace space_;
  Matrix matrix_;
};

struct WeightedState {
  double weight;
  DensityMatrix state;
};

DensityMatrix mix(std::initializer_list<WeightedState> terms);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

// a * b. Factors that are mostly zeros go through a sparse kernel; the
// quadrature and projector observables at large truncation are.
Matrix multiply(const Matrix& a, const Matrix& b);

// Kronecker product in argument order.
Matrix kron(std::span<const Matrix> factors);
Matrix kron(std::initializer_list<Matrix> factors);
Observable tensor(std::span<const Observable> factors);
Observable tensor(std::initializer_list<Observable> factors);

// (M^T_k)_{..i..,..j..} = M_{..j..,..i..}, where only subsystem k's row and
// column digits are exchanged.
Matrix partial_transpose(const Matrix& m, const HilbertSpace& space, std::size_t k = 0);
Observable partial_transpose(const Observable& m, std::size_t k = 0);
// The partial transpose of a state is Hermitian with unit trace but need not be
// positive, so it is returned as an Observable.
Observable partial_transpose(const DensityMatrix& rho, std::size_t k = 0);

// tr(rho M) without forming the product.
Complex trace_product(const Matrix& rho, const Matrix& m);

double expectation(const DensityMatrix& rho, const Observable& m);
double expectation(const StateVector& psi, const Observable& m);
double variance(const DensityMatrix& rho, const Observable& m);
double variance(const StateVector& psi, const Observable& m);

Matrix commutator(const Observable& m, const Observable& n);
Observable anticommutator(const Observable& m, const Observable& n);

Eigen::VectorXd eigenvalues(const Matrix& h);
double min_eigenvalue(const Matrix& h);

// Truncated bosonic mode: a|n> = sqrt(n)|n-1>.
Matrix annihilation(std::size_t dim);
Matrix creation(std::size_t dim);
Observable number_operator(std::size_t dim);

Matrix identity(std::size_t dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
// Pauli basis sigma_0..sigma_3 with sigma_0 the identity.
const Matrix& pauli(std::size_t mu);

// |i><j| on a dim-level system.
Matrix dyad(std::size_t dim, std::size_t i, std::size_t j);
// |i><j| + |j><i|; the generalized sigma_x between levels i and j.
Matrix level_flip(std::size_t dim, std::size_t i, std::size_t j);
Matrix projector(const StateVector& psi);

}  // namespace srpt
