#include "srpt/witnesses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace srpt {

namespace {

using Index = Eigen::Index;

Matrix pauli_dot(const Eigen::Vector3d& v) {
  return v(0) * pauli_x() + v(1) * pauli_y() + v(2) * pauli_z();
}

Matrix basis_projector(const HilbertSpace& space, std::initializer_list<std::size_t> digits) {
  const auto idx = static_cast<Index>(space.index(digits));
  Matrix m = Matrix::Zero(static_cast<Index>(space.total_dim()),
                          static_cast<Index>(space.total_dim()));
  m(idx, idx) = 1.0;
  return m;
}

}  // namespace

ObservablePair prop1_pair(const HilbertSpace& space, std::size_t i0, std::size_t i1) {
  if (space.subsystems() != 2) throw DimensionMismatch("prop1_pair: space must be bipartite");
  if (i0 == i1) throw std::invalid_argument("prop1_pair: levels must differ");
  const std::size_t d1 = space.dim(0), d2 = space.dim(1);
  if (i0 >= std::min(d1, d2) || i1 >= std::min(d1, d2)) {
    throw std::out_of_range("prop1_pair: level out of range");
  }
  Observable a(space, kron({dyad(d1, i0, i0), dyad(d2, i1, i1)}));
  Observable b(space, kron({level_flip(d1, i0, i1), level_flip(d2, i0, i1)}));
  return {std::move(a), std::move(b)};
}

Observable prop2_observable(const Prop2Params& p) {
  const Matrix id = identity(2);
  Matrix m = kron({pauli_dot(p.a), pauli_dot(p.b)}) + kron({id, pauli_dot(p.c)}) +
             kron({Matrix(pauli_dot(p.d) + p.eta * id), id});
  return Observable(HilbertSpace{2, 2}, std::move(m));
}

Eigen::Matrix4d pauli_coefficients(const Observable& m) {
  if (!(m.space() == HilbertSpace{2, 2})) {
    throw DimensionMismatch("pauli_coefficients: needs a (2,2) space");
  }
  Eigen::Matrix4d coeffs;
  for (std::size_t mu = 0; mu < 4; ++mu)
    for (std::size_t nu = 0; nu < 4; ++nu) {
      const Matrix basis = kron({pauli(mu), pauli(nu)});
      coeffs(static_cast<Index>(mu), static_cast<Index>(nu)) =
          0.25 * trace_product(m.matrix(), basis).real();
    }
  return coeffs;
}

std::variant<Prop2Params, NotRepresentable> prop2_check(const Observable& m, double minor_tol) {
  const Eigen::Matrix4d coeffs = pauli_coefficients(m);
  const Eigen::Matrix3d block = coeffs.bottomRightCorner<3, 3>();

  double max_minor = 0.0;
  for (Index r1 = 0; r1 < 3; ++r1)
    for (Index r2 = r1 + 1; r2 < 3; ++r2)
      for (Index c1 = 0; c1 < 3; ++c1)
        for (Index c2 = c1 + 1; c2 < 3; ++c2) {
          const double minor =
              block(r1, c1) * block(r2, c2) - block(r1, c2) * block(r2, c1);
          max_minor = std::max(max_minor, std::abs(minor));
        }
  if (max_minor > minor_tol) return NotRepresentable{max_minor};

  Prop2Params p;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(block, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double s0 = svd.singularValues()(0);
  if (s0 > 0.0) {
    p.a = std::sqrt(s0) * svd.matrixU().col(0);
    p.b = std::sqrt(s0) * svd.matrixV().col(0);
    const double cutoff = 1e-12 * p.a.cwiseAbs().maxCoeff();
    for (Index i = 0; i < 3; ++i) {
      if (std::abs(p.a(i)) > cutoff) {
        if (p.a(i) < 0.0) {
          p.a = -p.a;
          p.b = -p.b;
        }
        break;
      }
    }
  }
  p.c = coeffs.block<1, 3>(0, 1).transpose();
  p.d = coeffs.block<3, 1>(1, 0);
  p.eta = coeffs(0, 0);
  return p;
}

ObservablePair prop3_triple(int which) {
  const HilbertSpace space{2, 2, 2};
  const Matrix x = pauli_x();
  const Matrix id = identity(2);
  switch (which) {
    case 1:
      return {Observable(space, basis_projector(space, {0, 0, 1})),
              Observable(space, kron({x, id, x}))};
    case 2:
      return {Observable(space, basis_projector(space, {0, 1, 0})),
              Observable(space, kron({x, x, id}))};
    case 3:
      return {Observable(space, basis_projector(space, {0, 1, 1})),
              Observable(space, kron({x, x, x}))};
    default:
      throw std::invalid_argument("prop3_triple: selector must be 1, 2 or 3");
  }
}

ObservablePair oscillator2d_pair(std::size_t n) {
  if (n < 1) throw std::invalid_argument("oscillator2d_pair: n must be >= 1");
  const std::size_t d = n + 1;
  const HilbertSpace space{d, d};
  const Matrix flip = level_flip(d, 0, n);
  return {Observable(space, basis_projector(space, {0, 0})), Observable(space, kron({flip, flip}))};
}

ObservablePair oscillator3d_pair(std::size_t n, int m) {
  const std::size_t q = m == 0 ? 2 : static_cast<std::size_t>(std::abs(m));
  if (m == 0 && n < 2) throw std::out_of_range("oscillator3d_pair: m = 0 needs n >= 2");
  if (m != 0 && (q > n)) throw std::out_of_range("oscillator3d_pair: need 1 <= |m| <= n");
  const std::size_t d = n + 1;
  const HilbertSpace space{d, d, d};
  const std::size_t rest = n - q;
  const Matrix flip = level_flip(d, 0, q);
  return {Observable(space, basis_projector(space, {0, 0, rest})),
          Observable(space, kron({flip, flip, dyad(d, rest, rest)}))};
}

ObservablePair multiphoton_pair() { return oscillator2d_pair(2); }

ObservablePair cat_quadratures(double a1, double a2, double b1, double b2,
                               std::size_t truncation) {
  if (truncation < 4) throw std::invalid_argument("cat_quadratures: truncation must be >= 4");
  const HilbertSpace space{truncation, truncation};
  const Matrix ann = annihilation(truncation);
  const Matrix id = identity(truncation);
  const Complex i(0.0, 1.0);
  const Matrix x = ann.adjoint() + ann;
  const Matrix p = i * (ann.adjoint() - ann);
  return {Observable(space, a1 * kron({x, id}) + b1 * kron({id, x})),
          Observable(space, a2 * kron({p, id}) + b2 * kron({id, p}))};
}

ObservablePair werner_bipartite_pair(double phi) {
  const HilbertSpace space{2, 2};
  const Matrix z = pauli_z();
  const Matrix rotated = std::cos(phi) * pauli_x() + std::sin(phi) * pauli_y();
  return {Observable(space, kron({z, z})), Observable(space, kron({pauli_x(), rotated}))};
}

ObservablePair werner_multipartite_pair(std::size_t n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("werner_multipartite_pair: N must be >= 2");
  if (n_qubits > 20) throw std::invalid_argument("werner_multipartite_pair: N too large");
  const HilbertSpace space(std::vector<std::size_t>(n_qubits, 2));
  const auto dim = static_cast<Index>(space.total_dim());
  const Index zeros = 0;
  const Index ones = dim - 1;
  const Index zero_then_ones = dim / 2 - 1;  // |01...1>
  const Index one_then_zeros = dim / 2;      // |10...0>

  Matrix a = Matrix::Zero(dim, dim);
  a(zero_then_ones, zero_then_ones) = 1.0;
  a(one_then_zeros, one_then_zeros) = 1.0;

  Matrix b = Matrix::Zero(dim, dim);
  b(zeros, ones) = b(ones, zeros) = 1.0;
  b(zero_then_ones, one_then_zeros) = b(one_then_zeros, zero_then_ones) = 1.0;
  return {Observable(space, std::move(a)), Observable(space, std::move(b))};
}

}  // namespace srpt
