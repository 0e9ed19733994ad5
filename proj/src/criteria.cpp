#include "srpt/criteria.hpp"

#include <cmath>

namespace srpt {

namespace {

void require_same_space(const HilbertSpace& a, const HilbertSpace& b, const char* what) {
  if (!(a == b)) {
    throw DimensionMismatch(std::string(what) + ": spaces " + a.to_string() + " and " +
                            b.to_string() + " differ");
  }
}

Complex mean_of(const DensityMatrix& rho, const Matrix& m) {
  return trace_product(rho.matrix(), m);
}

Complex mean_of(const StateVector& psi, const Matrix& m) {
  return psi.amplitudes().dot(m * psi.amplitudes());
}

// The operators entering one side of the relation after any transposition.
struct Terms {
  Observable a;
  Observable b;
  Matrix comm;
  Observable anticomm;
};

template <class State>
UncertaintyReport assemble(const State& state, const Terms& t, double violation_tol) {
  UncertaintyReport r;
  r.violation_tol = violation_tol;
  r.lhs = variance(state, t.a) * variance(state, t.b);
  const Complex comm_mean = mean_of(state, t.comm);
  r.comm_term = 0.25 * std::norm(comm_mean);
  const double cross = expectation(state, t.anticomm) -
                       2.0 * expectation(state, t.a) * expectation(state, t.b);
  r.anticomm_term = 0.25 * cross * cross;
  r.rhs = r.comm_term + r.anticomm_term;
  r.slack = r.rhs - r.lhs;
  r.violated = r.slack > violation_tol;
  return r;
}

Terms plain_terms(const Observable& a, const Observable& b) {
  const Matrix ab = multiply(a.matrix(), b.matrix());
  return Terms{a, b, ab - ab.adjoint(), Observable(a.space(), ab + ab.adjoint())};
}

Terms transposed_terms(const Observable& a, const Observable& b, std::size_t k,
                       AdmissibilityCheck check) {
  require_same_space(a.space(), b.space(), "srpt_evaluate");
  if (check == AdmissibilityCheck::enforce) {
    if (auto ra = is_admissible(a, k); !ra.admissible) throw AdmissibilityError("A", ra.residual);
    if (auto rb = is_admissible(b, k); !rb.admissible) throw AdmissibilityError("B", rb.residual);
  }
  const HilbertSpace& space = a.space();
  const Matrix ab = multiply(a.matrix(), b.matrix());
  return Terms{partial_transpose(a, k), partial_transpose(b, k),
               partial_transpose(Matrix(ab - ab.adjoint()), space, k),
               Observable(space, partial_transpose(Matrix(ab + ab.adjoint()), space, k))};
}

template <class State>
UncertaintyReport sr_impl(const State& state, const Observable& a, const Observable& b,
                          double violation_tol) {
  require_same_space(state.space(), a.space(), "sr_uncertainty");
  require_same_space(state.space(), b.space(), "sr_uncertainty");
  return assemble(state, plain_terms(a, b), violation_tol);
}

template <class State>
UncertaintyReport srpt_impl(const State& state, const Observable& a, const Observable& b,
                            std::size_t k, AdmissibilityCheck check, double violation_tol) {
  require_same_space(state.space(), a.space(), "srpt_evaluate");
  require_same_space(state.space(), b.space(), "srpt_evaluate");
  return assemble(state, transposed_terms(a, b, k, check), violation_tol);
}

struct Quadratures {
  Matrix x1, p1, x2, p2;
};

Quadratures mode_quadratures(const HilbertSpace& space) {
  if (space.subsystems() != 2) throw DimensionMismatch("duan_criterion: needs two modes");
  const Complex i(0.0, 1.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Matrix a1 = annihilation(space.dim(0));
  const Matrix a2 = annihilation(space.dim(1));
  return {(a1.adjoint() + a1) * inv_sqrt2, i * (a1.adjoint() - a1) * inv_sqrt2,
          (a2.adjoint() + a2) * inv_sqrt2, i * (a2.adjoint() - a2) * inv_sqrt2};
}

void check_duan_param(double a_param) {
  if (a_param == 0.0 || !std::isfinite(a_param)) {
    throw std::invalid_argument("duan_criterion: a_param must be finite and non-zero");
  }
}

DuanReport duan_report(double a_param, double lhs_sum, double violation_tol) {
  DuanReport r;
  r.a_param = a_param;
  r.violation_tol = violation_tol;
  r.lhs_sum = lhs_sum;
  r.bound = a_param * a_param + 1.0 / (a_param * a_param);
  r.violated = r.bound - r.lhs_sum > violation_tol;
  return r;
}

// u = |a| x1 + x2/a, v = |a| p1 - p2/a.
DuanReport duan_impl(const DensityMatrix& rho, double a_param, double violation_tol) {
  check_duan_param(a_param);
  const HilbertSpace& space = rho.space();
  const Quadratures q = mode_quadratures(space);
  const Matrix id1 = identity(space.dim(0));
  const Matrix id2 = identity(space.dim(1));
  const double s = std::abs(a_param);
  const Observable u(space, s * kron({q.x1, id2}) + kron({id1, q.x2}) / a_param);
  const Observable v(space, s * kron({q.p1, id2}) - kron({id1, q.p2}) / a_param);
  return duan_report(a_param, variance(rho, u) + variance(rho, v), violation_tol);
}

// Pure states: with psi reshaped to the d0 x d1 amplitude matrix P,
// (X (x) 1) psi is X P and (1 (x) Y) psi is P Y^T.
DuanReport duan_impl(const StateVector& psi, double a_param, double violation_tol) {
  check_duan_param(a_param);
  const HilbertSpace& space = psi.space();
  const Quadratures q = mode_quadratures(space);
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> amp(psi.amplitudes().data(), Eigen::Index(space.dim(0)),
                                       Eigen::Index(space.dim(1)));
  const double s = std::abs(a_param);
  const auto spread = [&](const Matrix& applied) {
    const Complex mean = (amp.conjugate().array() * applied.array()).sum();
    return std::max(0.0, applied.squaredNorm() - mean.real() * mean.real());
  };
  const Matrix u = s * q.x1 * amp + amp * q.x2.transpose() / a_param;
  const Matrix v = s * q.p1 * amp - amp * q.p2.transpose() / a_param;
  return duan_report(a_param, spread(u) + spread(v), violation_tol);
}

}  // namespace

AdmissibilityError::AdmissibilityError(std::string observable, double residual)
    : std::domain_error("observable " + observable +
                        " is not admissible: ||(M^T)^2 - (M^2)^T||_F = " +
                        std::to_string(residual)),
      observable_(std::move(observable)),
      residual_(residual) {}

UncertaintyReport sr_uncertainty(const DensityMatrix& rho, const Observable& a,
                                 const Observable& b, double violation_tol) {
  return sr_impl(rho, a, b, violation_tol);
}

UncertaintyReport sr_uncertainty(const StateVector& psi, const Observable& a,
                                 const Observable& b, double violation_tol) {
  return sr_impl(psi, a, b, violation_tol);
}

AdmissibilityReport is_admissible(const Observable& m, std::size_t k, double adm_tol) {
  const HilbertSpace& space = m.space();
  const Matrix mt = partial_transpose(m.matrix(), space, k);
  const Matrix square_of_transpose = multiply(mt, mt);
  const Matrix transpose_of_square = partial_transpose(multiply(m.matrix(), m.matrix()), space, k);
  AdmissibilityReport r;
  r.tolerance = adm_tol;
  r.residual = (square_of_transpose - transpose_of_square).norm();
  r.admissible = r.residual <= adm_tol;
  return r;
}

UncertaintyReport srpt_evaluate(const DensityMatrix& rho, const Observable& a, const Observable& b,
                                std::size_t k, AdmissibilityCheck check, double violation_tol) {
  return srpt_impl(rho, a, b, k, check, violation_tol);
}

UncertaintyReport srpt_evaluate(const StateVector& psi, const Observable& a, const Observable& b,
                                std::size_t k, AdmissibilityCheck check, double violation_tol) {
  return srpt_impl(psi, a, b, k, check, violation_tol);
}

double ppt_min_eigenvalue(const DensityMatrix& rho, std::size_t k) {
  return min_eigenvalue(partial_transpose(rho.matrix(), rho.space(), k));
}

DuanReport duan_criterion(const DensityMatrix& rho, double a_param, double violation_tol) {
  return duan_impl(rho, a_param, violation_tol);
}

DuanReport duan_criterion(const StateVector& psi, double a_param, double violation_tol) {
  return duan_impl(psi, a_param, violation_tol);
}

nlohmann::json to_json(const UncertaintyReport& r) {
  return {{"lhs", r.lhs},           {"comm_term", r.comm_term},
          {"anticomm_term", r.anticomm_term}, {"rhs", r.rhs},
          {"slack", r.slack},       {"violated", r.violated},
          {"violation_tol", r.violation_tol}};
}

nlohmann::json to_json(const AdmissibilityReport& r) {
  return {{"residual", r.residual}, {"admissible", r.admissible}, {"adm_tol", r.tolerance}};
}

nlohmann::json to_json(const DuanReport& r) {
  return {{"a_param", r.a_param}, {"lhs_sum", r.lhs_sum}, {"bound", r.bound},
          {"violated", r.violated}, {"violation_tol", r.violation_tol}};
}

}  // namespace srpt
