#include "srpt/states.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

namespace srpt {

namespace {

using Index = Eigen::Index;

constexpr double kEigenvalueTol = 1e-9;
constexpr double kPhaseCutoff = 1e-12;

Vector random_gaussian_vector(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Index>(dim));
  for (Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

Vector random_product_vector(const HilbertSpace& space, std::mt19937_64& rng) {
  Vector out = Vector::Ones(1);
  for (std::size_t d : space.dims()) {
    Vector local = random_gaussian_vector(d, rng);
    local.normalize();
    Vector next(out.size() * local.size());
    for (Index i = 0; i < out.size(); ++i) next.segment(i * local.size(), local.size()) = out(i) * local;
    out = std::move(next);
  }
  return out;
}

// Rotates v so that its first entry above the cutoff is real and positive.
void fix_phase(Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kPhaseCutoff) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
  }
}

int nearest_integer(double value, const char* what) {
  const double r = std::round(value);
  if (std::abs(value - r) > kEigenvalueTol) {
    throw std::logic_error(std::string(what) + ": eigenvalue " + std::to_string(value) +
                           " is not an integer");
  }
  return static_cast<int>(r);
}

// Matrix of `op` in the orthonormal basis given by flat indices.
Matrix restrict_to(const Matrix& op, const std::vector<Index>& basis) {
  const auto n = static_cast<Index>(basis.size());
  Matrix out(n, n);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c < n; ++c) out(r, c) = op(basis[static_cast<std::size_t>(r)],
                                                 basis[static_cast<std::size_t>(c)]);
  return out;
}

Matrix mode_operator(const Matrix& local, std::size_t mode, std::size_t modes, std::size_t dim) {
  std::vector<Matrix> factors(modes, identity(dim));
  factors[mode] = local;
  return kron(factors);
}

// Restricts a Hermitian operator to a subspace and returns (eigenvalues, eigenvectors).
Eigen::SelfAdjointEigenSolver<Matrix> diagonalize(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return solver;
}

}  // namespace

StateVector schmidt_state(std::span<const Complex> coeffs, std::size_t d1, std::size_t d2) {
  if (coeffs.size() > std::min(d1, d2)) {
    throw std::invalid_argument("schmidt_state: more coefficients than min(d1, d2)");
  }
  HilbertSpace space{d1, d2};
  Vector v = Vector::Zero(static_cast<Index>(space.total_dim()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v(static_cast<Index>(space.index({i, i}))) = coeffs[i];
  return StateVector::normalized(std::move(space), std::move(v));
}

StateVector schmidt_state(std::initializer_list<Complex> coeffs, std::size_t d1, std::size_t d2) {
  return schmidt_state(std::span<const Complex>(coeffs.begin(), coeffs.size()), d1, d2);
}

StateVector acin_state(double l0, double l1, double l2, double l3, double l4, double phase) {
  HilbertSpace space{2, 2, 2};
  Vector v = Vector::Zero(8);
  v(static_cast<Index>(space.index({0, 0, 0}))) = l0;
  v(static_cast<Index>(space.index({1, 0, 0}))) = std::polar(l1, phase);
  v(static_cast<Index>(space.index({1, 0, 1}))) = l2;
  v(static_cast<Index>(space.index({1, 1, 0}))) = l3;
  v(static_cast<Index>(space.index({1, 1, 1}))) = l4;
  return StateVector::normalized(std::move(space), std::move(v));
}

StateVector ghz(std::size_t n_qubits) {
  if (n_qubits < 2) throw std::invalid_argument("ghz: N must be >= 2");
  HilbertSpace space(std::vector<std::size_t>(n_qubits, 2));
  Vector v = Vector::Zero(static_cast<Index>(space.total_dim()));
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return StateVector::normalized(std::move(space), std::move(v));
}

DensityMatrix maximally_mixed(const HilbertSpace& space) {
  const auto d = static_cast<double>(space.total_dim());
  return DensityMatrix(space, identity(space.total_dim()) / d);
}

DensityMatrix werner(const StateVector& psi, double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("werner: x must lie in [0, 1]");
  return mix({{x, density_from_pure(psi)}, {1.0 - x, maximally_mixed(psi.space())}});
}

DensityMatrix werner_ghz(std::size_t n_qubits, double x) { return werner(ghz(n_qubits), x); }

std::vector<Oscillator2dEigenstate> oscillator2d_eigenstates(std::size_t n) {
  const std::size_t mode_dim = n + 2;
  const Complex i(0.0, 1.0);
  const Matrix a = kron({annihilation(mode_dim), identity(mode_dim)});
  const Matrix b = kron({identity(mode_dim), annihilation(mode_dim)});
  const Matrix lz = i * (a * b.adjoint() - a.adjoint() * b);

  const HilbertSpace work{mode_dim, mode_dim};
  std::vector<Index> basis;
  for (std::size_t k = 0; k <= n; ++k) basis.push_back(static_cast<Index>(work.index({k, n - k})));
  const Matrix block = restrict_to(lz, basis);
  const auto solver = diagonalize(block);

  const std::size_t out_dim = std::max<std::size_t>(n + 1, 2);
  const HilbertSpace out_space{out_dim, out_dim};
  std::vector<Oscillator2dEigenstate> states;
  for (Index col = 0; col < solver.eigenvalues().size(); ++col) {
    const int m = nearest_integer(solver.eigenvalues()(col), "oscillator2d_eigenstates");
    Vector coeffs = solver.eigenvectors().col(col);
    fix_phase(coeffs);
    const double residual = (block * coeffs - double(m) * coeffs).norm();

    Vector full = Vector::Zero(static_cast<Index>(out_space.total_dim()));
    std::vector<Complex> table(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      table[k] = coeffs(static_cast<Index>(k));
      full(static_cast<Index>(out_space.index({k, n - k}))) = table[k];
    }
    states.push_back({n, m, std::move(table), StateVector::normalized(out_space, std::move(full)),
                      residual});
  }
  std::sort(states.begin(), states.end(), [](const auto& x, const auto& y) { return x.m < y.m; });
  for (std::size_t s = 1; s < states.size(); ++s) {
    if (states[s].m == states[s - 1].m) {
      throw std::logic_error("oscillator2d_eigenstates: degenerate L_z eigenvalue");
    }
  }
  return states;
}

std::vector<Oscillator3dEigenstate> oscillator3d_eigenstates(std::size_t n) {
  const std::size_t mode_dim = n + 2;
  const Complex i(0.0, 1.0);
  const Matrix ann = annihilation(mode_dim);
  const Matrix a = mode_operator(ann, 0, 3, mode_dim);
  const Matrix b = mode_operator(ann, 1, 3, mode_dim);
  const Matrix c = mode_operator(ann, 2, 3, mode_dim);
  const Matrix na = a.adjoint() * a;
  const Matrix nb = b.adjoint() * b;
  const Matrix nc = c.adjoint() * c;

  const Matrix lz = i * (a * b.adjoint() - a.adjoint() * b);
  const auto pair_hop = [](const Matrix& x, const Matrix& y) {
    const Matrix hop = x * x * y.adjoint() * y.adjoint();
    return Matrix(hop + hop.adjoint());
  };
  const Matrix l2 = 2.0 * (na * nb + na * nc + nb * nc + na + nb + nc) -
                    (pair_hop(a, b) + pair_hop(a, c) + pair_hop(b, c));

  // Basis |j, i-j, n-i>, ordered by (i, j).
  const HilbertSpace work{mode_dim, mode_dim, mode_dim};
  std::vector<Index> basis;
  std::vector<std::pair<std::size_t, std::size_t>> labels;
  for (std::size_t row = 0; row <= n; ++row)
    for (std::size_t j = 0; j <= row; ++j) {
      basis.push_back(static_cast<Index>(work.index({j, row - j, n - row})));
      labels.emplace_back(row, j);
    }
  const Matrix lz_block = restrict_to(lz, basis);
  const Matrix l2_block = restrict_to(l2, basis);
  const auto lz_solver = diagonalize(lz_block);

  std::map<int, std::vector<Index>> by_m;
  for (Index col = 0; col < lz_solver.eigenvalues().size(); ++col) {
    by_m[nearest_integer(lz_solver.eigenvalues()(col), "oscillator3d_eigenstates")].push_back(col);
  }

  const std::size_t out_dim = std::max<std::size_t>(n + 1, 2);
  const HilbertSpace out_space{out_dim, out_dim, out_dim};
  std::vector<Oscillator3dEigenstate> states;
  for (const auto& [m, cols] : by_m) {
    Matrix eigenspace(lz_block.rows(), static_cast<Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      eigenspace.col(static_cast<Index>(k)) = lz_solver.eigenvectors().col(cols[k]);
    }
    const Matrix projected = eigenspace.adjoint() * l2_block * eigenspace;
    const auto l2_solver = diagonalize(Matrix((projected + projected.adjoint()) / 2.0));
    std::vector<int> seen;
    for (Index k = 0; k < l2_solver.eigenvalues().size(); ++k) {
      const double lambda = l2_solver.eigenvalues()(k);
      const int l = nearest_integer((-1.0 + std::sqrt(1.0 + 4.0 * std::max(lambda, 0.0))) / 2.0,
                                    "oscillator3d_eigenstates");
      if (std::find(seen.begin(), seen.end(), l) != seen.end()) {
        throw std::logic_error("oscillator3d_eigenstates: residual degeneracy in L^2");
      }
      seen.push_back(l);
      Vector coeffs = eigenspace * l2_solver.eigenvectors().col(k);
      fix_phase(coeffs);
      const double lz_res = (lz_block * coeffs - double(m) * coeffs).norm();
      const double l2_res = (l2_block * coeffs - double(l * (l + 1)) * coeffs).norm();

      std::vector<std::vector<Complex>> table(n + 1);
      Vector full = Vector::Zero(static_cast<Index>(out_space.total_dim()));
      for (std::size_t p = 0; p < labels.size(); ++p) {
        const auto [row, j] = labels[p];
        table[row].resize(row + 1);
        table[row][j] = coeffs(static_cast<Index>(p));
        full(static_cast<Index>(out_space.index({j, row - j, n - row}))) = table[row][j];
      }
      states.push_back({n, l, m, std::move(table),
                        StateVector::normalized(out_space, std::move(full)), lz_res, l2_res});
    }
  }
  std::sort(states.begin(), states.end(), [](const auto& x, const auto& y) {
    return x.l != y.l ? x.l > y.l : x.m < y.m;
  });
  return states;
}

std::size_t min_cat_truncation(double amplitude) {
  const double r = std::abs(amplitude);
  return static_cast<std::size_t>(std::ceil(r * r + 7.0 * r + 10.0));
}

Vector coherent_state(Complex alpha, std::size_t truncation) {
  Vector v(static_cast<Index>(truncation));
  Complex term = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t k = 0; k < truncation; ++k) {
    if (k > 0) term *= alpha / std::sqrt(static_cast<double>(k));
    v(static_cast<Index>(k)) = term;
  }
  return v / v.norm();
}

StateVector cat_state(double alpha, double beta, std::size_t truncation) {
  const std::size_t needed =
      std::max<std::size_t>(min_cat_truncation(std::max(std::abs(alpha), std::abs(beta))), 2);
  if (truncation < needed) {
    throw std::invalid_argument("cat_state: truncation " + std::to_string(truncation) +
                                " is below the required " + std::to_string(needed));
  }
  const auto product = [](const Vector& x, const Vector& y) {
    Vector out(x.size() * y.size());
    for (Index k = 0; k < x.size(); ++k) out.segment(k * y.size(), y.size()) = x(k) * y;
    return out;
  };
  const Vector plus = product(coherent_state(alpha, truncation), coherent_state(beta, truncation));
  const Vector minus =
      product(coherent_state(-alpha, truncation), coherent_state(-beta, truncation));
  const Vector sum = plus + minus;

  const double analytic = std::sqrt(2.0 + 2.0 * std::exp(-2.0 * alpha * alpha - 2.0 * beta * beta));
  if (std::abs(sum.norm() - analytic) > 1e-8) {
    throw std::logic_error("cat_state: normalization disagrees with the analytic value");
  }
  return StateVector::normalized(HilbertSpace{truncation, truncation}, sum);
}

StateVector multiphoton_state(Complex alpha, Complex beta, Complex gamma) {
  HilbertSpace space{3, 3};
  Vector v = Vector::Zero(9);
  v(static_cast<Index>(space.index({0, 2}))) = alpha;
  v(static_cast<Index>(space.index({1, 1}))) = beta;
  v(static_cast<Index>(space.index({2, 0}))) = gamma;
  return StateVector::normalized(std::move(space), std::move(v));
}

StateVector random_pure(const HilbertSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return StateVector::normalized(space, random_gaussian_vector(space.total_dim(), rng));
}

StateVector random_product_pure(const HilbertSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return StateVector::normalized(space, random_product_vector(space, rng));
}

DensityMatrix random_separable(const HilbertSpace& space, std::size_t terms, std::uint64_t seed) {
  if (terms < 1) throw std::invalid_argument("random_separable: terms must be >= 1");
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exponential(1.0);
  std::vector<double> weights(terms);
  for (double& w : weights) w = exponential(rng);
  double total = 0.0;
  for (double w : weights) total += w;

  std::vector<WeightedState> parts;
  parts.reserve(terms);
  for (std::size_t t = 0; t < terms; ++t) {
    parts.push_back({weights[t] / total,
                     density_from_pure(StateVector::normalized(space, random_product_vector(space, rng)))});
  }
  return mix(parts);
}

}  // namespace srpt
