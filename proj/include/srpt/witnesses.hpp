// Observable pairs used to detect entanglement with the SRPT inequality, and
// the complete family of admissible two-qubit observables.

#pragma once

#include <cstddef>
#include <variant>

#include <Eigen/Dense>

#include "srpt/hilbert.hpp"

namespace srpt {

struct ObservablePair {
  Observable a;
  Observable b;
};

// M = (a.s) (x) (b.s) + 1 (x) (c.s) + (d.s + eta 1) (x) 1, with s the Pauli vector.
struct Prop2Params {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  Eigen::Vector3d b = Eigen::Vector3d::Zero();
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  Eigen::Vector3d d = Eigen::Vector3d::Zero();
  double eta = 0.0;
};

struct NotRepresentable {
  double max_minor = 0.0;
};

inline constexpr double kMinorTol = 1e-10;

// A = |i0><i0| (x) |i1><i1|, B = s_x(i0,i1) (x) s_x(i0,i1) on a bipartite space,
// where s_x(i,j) = |i><j| + |j><i|. The state is assumed to be given in the
// basis of its decomposition sum_i c_i |i>|i>.
ObservablePair prop1_pair(const HilbertSpace& space, std::size_t i0, std::size_t i1);

Observable prop2_observable(const Prop2Params& p);

// Pauli coefficients a_{mu nu} = tr(M s_mu (x) s_nu) / 4 of a two-qubit observable.
Eigen::Matrix4d pauli_coefficients(const Observable& m);

// Succeeds iff every 2x2 minor of the 3x3 correlation block vanishes, i.e. the
// block is rank one. Sign convention: the first non-negligible entry of a is
// positive.
std::variant<Prop2Params, NotRepresentable> prop2_check(const Observable& m,
                                                        double minor_tol = kMinorTol);

// Three-qubit pairs: 1 -> (|001><001|, s_x 1 s_x), 2 -> (|010><010|, s_x s_x 1),
// 3 -> (|011><011|, s_x s_x s_x).
ObservablePair prop3_triple(int which);

// A = |00><00|, B = s_x(0,n) (x) s_x(0,n) on the (n+1, n+1) space.
ObservablePair oscillator2d_pair(std::size_t n);

// On the (n+1)^3 space with q = 2 for m = 0 and q = |m| otherwise:
// A = |0,0,n-q><0,0,n-q|, B = s_x(0,q) (x) s_x(0,q) (x) |n-q><n-q|.
ObservablePair oscillator3d_pair(std::size_t n, int m);

// A = |00><00|, B = s_x(0,2) (x) s_x(0,2) on (3,3).
ObservablePair multiphoton_pair();

// A = a1 (a^dag + a) + b1 (b^dag + b), B = i a2 (a^dag - a) + i b2 (b^dag - b).
ObservablePair cat_quadratures(double a1, double a2, double b1, double b2,
                               std::size_t truncation);

// A = s_z s_z, B = s_x (x) (cos(phi) s_x + sin(phi) s_y).
ObservablePair werner_bipartite_pair(double phi);

// A = |01..1><01..1| + |10..0><10..0|,
// B = |0..0><1..1| + |01..1><10..0| + h.c.
ObservablePair werner_multipartite_pair(std::size_t n_qubits);

}  // namespace srpt
