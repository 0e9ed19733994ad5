// Reference implementations for the tests. Everything here is written with
// explicit index loops on plain Eigen storage and does not call into the
// library, so agreement with it is an independent check.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using Dims = std::vector<std::size_t>;

inline std::size_t total(const Dims& dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= d;
  return n;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index k = 0; k < b.size(); ++k) out(i * b.size() + k) = a(i) * b(k);
  return out;
}

// Digits of a flat index, subsystem 0 most significant.
inline std::vector<std::size_t> digits(std::size_t idx, const Dims& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    d[k] = idx % dims[k];
    idx /= dims[k];
  }
  return d;
}

inline std::size_t flat(const std::vector<std::size_t>& d, const Dims& dims) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * dims[k] + d[k];
  return idx;
}

inline Mat partial_transpose(const Mat& m, const Dims& dims, std::size_t k) {
  const std::size_t n = total(dims);
  Mat out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      auto dr = digits(r, dims), dc = digits(c, dims);
      std::swap(dr[k], dc[k]);
      out(r, c) = m(flat(dr, dims), flat(dc, dims));
    }
  return out;
}

inline C trace_of_product(const Mat& a, const Mat& b) {
  C t = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

struct Terms {
  double lhs, comm, anticomm, rhs;
};

// Uncertainty terms from their definitions. With transpose = true every
// operator, including the composites AB - BA and AB + BA, is partially
// transposed on subsystem k before taking expectations in rho.
inline Terms uncertainty(const Mat& rho, const Mat& a, const Mat& b, const Dims& dims,
                         std::size_t k, bool transpose) {
  const auto t = [&](const Mat& m) { return transpose ? partial_transpose(m, dims, k) : m; };
  const Mat at = t(a), bt = t(b);
  const Mat comm = t(Mat(a * b - b * a));
  const Mat anti = t(Mat(a * b + b * a));
  const double ea = trace_of_product(rho, at).real();
  const double eb = trace_of_product(rho, bt).real();
  const double va = trace_of_product(rho, at * at).real() - ea * ea;
  const double vb = trace_of_product(rho, bt * bt).real() - eb * eb;
  const C ec = trace_of_product(rho, comm);
  const C en = trace_of_product(rho, anti);
  Terms out;
  out.lhs = va * vb;
  out.comm = 0.25 * std::norm(ec);
  out.anticomm = 0.25 * std::norm(en - 2.0 * ea * eb);
  out.rhs = out.comm + out.anticomm;
  return out;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
  std::uint64_t seed() { return gen_(); }

  Vec unit_vector(std::size_t n) {
    Vec v(n);
    for (std::size_t i = 0; i < n; ++i) v(i) = C(normal(), normal());
    return v / v.norm();
  }

  Mat hermitian(std::size_t n) {
    Mat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = C(normal(), normal());
    return 0.5 * (g + g.adjoint());
  }

  Mat unitary(std::size_t n) {
    Mat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = C(normal(), normal());
    Eigen::HouseholderQR<Mat> qr(g);
    return qr.householderQ();
  }

 private:
  std::mt19937_64 gen_;
};

inline Mat pauli(int mu) {
  Mat m(2, 2);
  switch (mu) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, C(0, -1), C(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

// sum_i v_i s_i for a real 3-vector.
inline Mat pauli_dot(const Eigen::Vector3d& v) {
  return v(0) * pauli(1) + v(1) * pauli(2) + v(2) * pauli(3);
}

inline Mat identity(std::size_t n) { return Mat::Identity(n, n); }

// P (x) Q + 1 (x) C + D (x) 1 with random Hermitian factors. Admissible for
// the transpose on the first factor in any dimension: squaring only produces
// P^2, {P, D}, D^2 and P on that side, and transposition commutes with each.
inline Mat admissible_family(Rng& rng, std::size_t first, std::size_t second) {
  const Mat p = rng.hermitian(first), d = rng.hermitian(first);
  const Mat q = rng.hermitian(second), c = rng.hermitian(second);
  return kron(p, q) + kron(identity(first), c) + kron(d, identity(second));
}

}  // namespace oracle
