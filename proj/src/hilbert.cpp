#include "srpt/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

namespace srpt {

namespace {

using Index = Eigen::Index;

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (!(a == b)) {
    throw DimensionMismatch(std::string(what) + ": spaces " + a.to_string() + " and " +
                            b.to_string() + " differ");
  }
}

void require_square(const Matrix& m, std::size_t dim, const char* what) {
  if (m.rows() != m.cols() || static_cast<std::size_t>(m.rows()) != dim) {
    throw DimensionMismatch(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", space needs " + std::to_string(dim));
  }
}

double real_checked(Complex value, const char* what) {
  if (std::abs(value.imag()) >= kImaginaryTol * std::max(1.0, std::abs(value.real()))) {
    throw std::logic_error(std::string(what) + ": imaginary part " + std::to_string(value.imag()) +
                           " exceeds tolerance");
  }
  return value.real();
}

double clamp_variance(double v) {
  if (v < -kPositivityTol) {
    throw std::logic_error("variance: negative value " + std::to_string(v));
  }
  return std::max(v, 0.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// HilbertSpace

HilbertSpace::HilbertSpace(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("HilbertSpace: no subsystems");
  for (std::size_t d : dims_) {
    if (d < 2) throw std::invalid_argument("HilbertSpace: subsystem dimension must be >= 2");
    total_ *= d;
  }
}

std::vector<std::size_t> HilbertSpace::digits(std::size_t index) const {
  if (index >= total_) throw std::out_of_range("HilbertSpace::digits: index out of range");
  std::vector<std::size_t> out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = index % dims_[k];
    index /= dims_[k];
  }
  return out;
}

std::size_t HilbertSpace::index(std::span<const std::size_t> digits) const {
  if (digits.size() != dims_.size()) {
    throw DimensionMismatch("HilbertSpace::index: wrong number of digits");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (digits[k] >= dims_[k]) throw std::out_of_range("HilbertSpace::index: digit out of range");
    idx = idx * dims_[k] + digits[k];
  }
  return idx;
}

HilbertSpace HilbertSpace::operator*(const HilbertSpace& other) const {
  std::vector<std::size_t> dims = dims_;
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return HilbertSpace(std::move(dims));
}

std::string HilbertSpace::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < dims_.size(); ++k) os << (k ? "," : "") << dims_[k];
  os << ')';
  return os.str();
}

// ---------------------------------------------------------------------------
// StateVector / Observable / DensityMatrix

StateVector::StateVector(HilbertSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.total_dim()) {
    throw DimensionMismatch("StateVector: amplitude count does not match space");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > kNormTol) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  }
}

StateVector StateVector::normalized(HilbertSpace space, Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("StateVector: cannot normalize a zero vector");
  }
  amplitudes /= norm;
  return StateVector(std::move(space), std::move(amplitudes));
}

StateVector StateVector::basis(HilbertSpace space, std::span<const std::size_t> digits) {
  Vector v = Vector::Zero(static_cast<Index>(space.total_dim()));
  v(static_cast<Index>(space.index(digits))) = 1.0;
  return StateVector(std::move(space), std::move(v));
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  if (m.size() == 0) return true;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

Observable::Observable(HilbertSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square(matrix_, space_.total_dim(), "Observable");
  if (!is_hermitian(matrix_)) throw std::invalid_argument("Observable: matrix is not Hermitian");
}

Observable::Observable(Matrix matrix)
    : space_({static_cast<std::size_t>(matrix.rows())}), matrix_(std::move(matrix)) {
  require_square(matrix_, space_.total_dim(), "Observable");
  if (!is_hermitian(matrix_)) throw std::invalid_argument("Observable: matrix is not Hermitian");
}

Observable Observable::operator+(const Observable& other) const {
  require_same_space(space_, other.space_, "Observable::operator+");
  return Observable(space_, matrix_ + other.matrix_);
}

Observable Observable::operator-(const Observable& other) const {
  require_same_space(space_, other.space_, "Observable::operator-");
  return Observable(space_, matrix_ - other.matrix_);
}

Observable Observable::operator*(double scale) const { return Observable(space_, matrix_ * scale); }

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix matrix, Trusted)
    : space_(std::move(space)), matrix_(std::move(matrix)) {}

DensityMatrix::DensityMatrix(HilbertSpace space, Matrix matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  require_square(matrix_, space_.total_dim(), "DensityMatrix");
  if (!is_hermitian(matrix_)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  if (min_eigenvalue(matrix_) < -kPositivityTol) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix density_from_pure(const StateVector& psi) {
  const Vector& v = psi.amplitudes();
  return DensityMatrix(psi.space(), v * v.adjoint(), DensityMatrix::Trusted{});
}

DensityMatrix mix(std::span<const WeightedState> terms) {
  if (terms.empty()) throw std::invalid_argument("mix: no terms");
  const HilbertSpace& space = terms.front().state.space();
  Matrix acc = Matrix::Zero(static_cast<Index>(space.total_dim()),
                            static_cast<Index>(space.total_dim()));
  double total = 0.0;
  for (const auto& [weight, state] : terms) {
    if (weight < 0.0) throw std::invalid_argument("mix: negative weight");
    require_same_space(space, state.space(), "mix");
    acc += weight * state.matrix();
    total += weight;
  }
  if (std::abs(total - 1.0) > kTraceTol) throw std::invalid_argument("mix: weights do not sum to 1");
  // Convex combinations of valid states stay valid.
  return DensityMatrix(space, std::move(acc), DensityMatrix::Trusted{});
}

DensityMatrix mix(std::initializer_list<WeightedState> terms) {
  return mix(std::span<const WeightedState>(terms.begin(), terms.size()));
}

// ---------------------------------------------------------------------------
// Products and partial transposition

namespace {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

bool mostly_zero(const Matrix& m) {
  constexpr Eigen::Index kMinDim = 64;
  if (m.rows() < kMinDim || m.cols() < kMinDim) return false;
  const auto nonzeros = (m.array() != Complex(0.0)).count();
  return nonzeros * 20 < m.size();
}

}  // namespace

Matrix multiply(const Matrix& a, const Matrix& b) {
  const bool sa = mostly_zero(a), sb = mostly_zero(b);
  if (sa && sb) {
    const SparseMatrix sa_m = a.sparseView(), sb_m = b.sparseView();
    return Matrix(sa_m * sb_m);
  }
  if (sa) return SparseMatrix(a.sparseView()) * b;
  if (sb) return a * SparseMatrix(b.sparseView());
  return a * b;
}

Matrix kron(std::span<const Matrix> factors) {
  if (factors.empty()) throw std::invalid_argument("kron: empty factor list");
  Matrix out = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    Matrix next = Eigen::kroneckerProduct(out, factors[f]).eval();
    out = std::move(next);
  }
  return out;
}

Matrix kron(std::initializer_list<Matrix> factors) {
  return kron(std::span<const Matrix>(factors.begin(), factors.size()));
}

Observable tensor(std::span<const Observable> factors) {
  if (factors.empty()) throw std::invalid_argument("tensor: empty factor list");
  std::vector<std::size_t> dims;
  std::vector<Matrix> mats;
  mats.reserve(factors.size());
  for (const auto& f : factors) {
    dims.insert(dims.end(), f.space().dims().begin(), f.space().dims().end());
    mats.push_back(f.matrix());
  }
  return Observable(HilbertSpace(std::move(dims)), kron(mats));
}

Observable tensor(std::initializer_list<Observable> factors) {
  return tensor(std::span<const Observable>(factors.begin(), factors.size()));
}

Matrix partial_transpose(const Matrix& m, const HilbertSpace& space, std::size_t k) {
  if (k >= space.subsystems()) throw std::out_of_range("partial_transpose: subsystem out of range");
  require_square(m, space.total_dim(), "partial_transpose");
  const auto& dims = space.dims();
  std::size_t left = 1, right = 1;
  for (std::size_t s = 0; s < k; ++s) left *= dims[s];
  for (std::size_t s = k + 1; s < dims.size(); ++s) right *= dims[s];
  const std::size_t d = dims[k];

  Matrix out(m.rows(), m.cols());
  for (std::size_t l1 = 0; l1 < left; ++l1)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t r1 = 0; r1 < right; ++r1) {
        const auto row = static_cast<Index>((l1 * d + i) * right + r1);
        for (std::size_t l2 = 0; l2 < left; ++l2)
          for (std::size_t j = 0; j < d; ++j) {
            const auto col = static_cast<Index>((l2 * d + j) * right);
            const auto src_row = static_cast<Index>((l1 * d + j) * right + r1);
            const auto src_col = static_cast<Index>((l2 * d + i) * right);
            for (std::size_t r2 = 0; r2 < right; ++r2) {
              out(row, col + static_cast<Index>(r2)) = m(src_row, src_col + static_cast<Index>(r2));
            }
          }
      }
  return out;
}

Observable partial_transpose(const Observable& m, std::size_t k) {
  return Observable(m.space(), partial_transpose(m.matrix(), m.space(), k));
}

Observable partial_transpose(const DensityMatrix& rho, std::size_t k) {
  return Observable(rho.space(), partial_transpose(rho.matrix(), rho.space(), k));
}

// ---------------------------------------------------------------------------
// Moments

Complex trace_product(const Matrix& rho, const Matrix& m) {
  if (rho.rows() != m.cols() || rho.cols() != m.rows()) {
    throw DimensionMismatch("trace_product: shape mismatch");
  }
  return rho.cwiseProduct(m.transpose()).sum();
}

double expectation(const DensityMatrix& rho, const Observable& m) {
  require_same_space(rho.space(), m.space(), "expectation");
  return real_checked(trace_product(rho.matrix(), m.matrix()), "expectation");
}

double expectation(const StateVector& psi, const Observable& m) {
  require_same_space(psi.space(), m.space(), "expectation");
  const Vector& v = psi.amplitudes();
  return real_checked(v.dot(m.matrix() * v), "expectation");
}

double variance(const DensityMatrix& rho, const Observable& m) {
  require_same_space(rho.space(), m.space(), "variance");
  const Matrix rho_m = multiply(rho.matrix(), m.matrix());
  const double mean = real_checked(rho_m.trace(), "variance");
  const double second = real_checked(trace_product(rho_m, m.matrix()), "variance");
  return clamp_variance(second - mean * mean);
}

double variance(const StateVector& psi, const Observable& m) {
  require_same_space(psi.space(), m.space(), "variance");
  const Vector& v = psi.amplitudes();
  const Vector mv = m.matrix() * v;
  const double mean = real_checked(v.dot(mv), "variance");
  return clamp_variance(mv.squaredNorm() - mean * mean);
}

Matrix commutator(const Observable& m, const Observable& n) {
  require_same_space(m.space(), n.space(), "commutator");
  const Matrix mn = multiply(m.matrix(), n.matrix());
  // For Hermitian factors NM = (MN)^dagger.
  return mn - mn.adjoint();
}

Observable anticommutator(const Observable& m, const Observable& n) {
  require_same_space(m.space(), n.space(), "anticommutator");
  const Matrix mn = multiply(m.matrix(), n.matrix());
  return Observable(m.space(), mn + mn.adjoint());
}

// ---------------------------------------------------------------------------
// Spectra

Eigen::VectorXd eigenvalues(const Matrix& h) {
  if (!is_hermitian(h)) throw std::invalid_argument("eigenvalues: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues: solver failed");
  return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& h) { return eigenvalues(h).minCoeff(); }

// ---------------------------------------------------------------------------
// Elementary operators

Matrix annihilation(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("annihilation: dim must be >= 2");
  Matrix a = Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  for (std::size_t n = 1; n < dim; ++n) {
    a(static_cast<Index>(n - 1), static_cast<Index>(n)) = std::sqrt(static_cast<double>(n));
  }
  return a;
}

Matrix creation(std::size_t dim) { return annihilation(dim).adjoint(); }

Observable number_operator(std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("number_operator: dim must be >= 2");
  Matrix n = Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) n(static_cast<Index>(k), static_cast<Index>(k)) = double(k);
  return Observable(std::move(n));
}

Matrix identity(std::size_t dim) {
  return Matrix::Identity(static_cast<Index>(dim), static_cast<Index>(dim));
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  const Complex i(0.0, 1.0);
  Matrix m(2, 2);
  m << 0.0, -i, i, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

const Matrix& pauli(std::size_t mu) {
  static const std::vector<Matrix> basis{identity(2), pauli_x(), pauli_y(), pauli_z()};
  return basis.at(mu);
}

Matrix dyad(std::size_t dim, std::size_t i, std::size_t j) {
  if (i >= dim || j >= dim) throw std::out_of_range("dyad: level out of range");
  Matrix m = Matrix::Zero(static_cast<Index>(dim), static_cast<Index>(dim));
  m(static_cast<Index>(i), static_cast<Index>(j)) = 1.0;
  return m;
}

Matrix level_flip(std::size_t dim, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("level_flip: levels must differ");
  return dyad(dim, i, j) + dyad(dim, j, i);
}

Matrix projector(const StateVector& psi) {
  return psi.amplitudes() * psi.amplitudes().adjoint();
}

}  // namespace srpt
