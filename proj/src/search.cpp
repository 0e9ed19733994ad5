#include "srpt/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "srpt/states.hpp"

namespace srpt {

namespace {

using Index = Eigen::Index;

constexpr std::size_t kProp2ParamsPerObservable = 13;
constexpr double kPurityTol = 1e-10;

struct Minimum {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

// GSL simplex minimizer (nmsimplex2) with the given initial step and
// characteristic-size stopping rule.
class SimplexMinimizer {
 public:
  using Objective = std::function<double(std::span<const double>)>;

  SimplexMinimizer(std::size_t dim, double step, int max_iterations, double size_tol)
      : dim_(dim), step_(step), max_iterations_(max_iterations), size_tol_(size_tol) {
    // Failures are reported through return codes, never by aborting.
    gsl_set_error_handler_off();
  }

  Minimum minimize(const Objective& f, const std::vector<double>& start) const {
    Context ctx{&f, 0};
    gsl_multimin_function fn{&Context::call, dim_, &ctx};

    gsl_vector* x = gsl_vector_alloc(dim_);
    gsl_vector* steps = gsl_vector_alloc(dim_);
    for (std::size_t i = 0; i < dim_; ++i) gsl_vector_set(x, i, start[i]);
    gsl_vector_set_all(steps, step_);
    gsl_multimin_fminimizer* s =
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim_);
    gsl_multimin_fminimizer_set(s, &fn, x, steps);

    for (int iter = 0; iter < max_iterations_; ++iter) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), size_tol_) == GSL_SUCCESS) break;
    }

    Minimum out;
    out.x.resize(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out.x[i] = gsl_vector_get(s->x, i);
    out.value = s->fval;
    out.evaluations = ctx.evaluations;

    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(steps);
    gsl_vector_free(x);
    return out;
  }

 private:
  struct Context {
    const Objective* f;
    int evaluations;
    static double call(const gsl_vector* v, void* params) {
      auto* self = static_cast<Context*>(params);
      ++self->evaluations;
      const double value = (*self->f)(std::span<const double>(v->data, v->size));
      return std::isfinite(value) ? value : std::numeric_limits<double>::max();
    }
  };

  std::size_t dim_;
  double step_;
  int max_iterations_;
  double size_tol_;
};

Eigen::Vector3d bounded(std::span<const double> raw, double bound) {
  Eigen::Vector3d v(raw[0], raw[1], raw[2]);
  const double norm = v.norm();
  if (norm > bound) v *= bound / norm;
  return v;
}

Prop2Params prop2_from(std::span<const double> raw, double bound) {
  Prop2Params p;
  p.a = bounded(raw.subspan(0, 3), bound);
  p.b = bounded(raw.subspan(3, 3), bound);
  p.c = bounded(raw.subspan(6, 3), bound);
  p.d = bounded(raw.subspan(9, 3), bound);
  p.eta = std::clamp(raw[12], -bound, bound);
  return p;
}

std::vector<double> seeded_start(std::size_t dim, std::uint64_t seed, int restart, double half_width) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> uniform(-half_width, half_width);
  std::vector<double> x(dim);
  for (double& v : x) v = uniform(rng);
  return x;
}

// Leading eigenvector of a rank-one density matrix.
StateVector pure_part(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  const Index top = solver.eigenvalues().size() - 1;
  if (std::abs(solver.eigenvalues()(top) - 1.0) > kPurityTol) {
    throw std::invalid_argument("maximize_violation: prop1_schmidt family needs a pure state");
  }
  return StateVector::normalized(rho.space(), solver.eigenvectors().col(top));
}

struct SchmidtBases {
  Matrix coefficients;  // d1 x d2 amplitude matrix
  Eigen::JacobiSVD<Matrix> svd;
};

SchmidtBases schmidt_bases(const StateVector& psi) {
  const HilbertSpace& space = psi.space();
  if (space.subsystems() != 2) throw DimensionMismatch("Schmidt decomposition needs two parties");
  const auto d1 = static_cast<Index>(space.dim(0));
  const auto d2 = static_cast<Index>(space.dim(1));
  Matrix coeffs(d1, d2);
  for (Index i = 0; i < d1; ++i)
    for (Index j = 0; j < d2; ++j) coeffs(i, j) = psi.amplitudes()(i * d2 + j);
  Eigen::JacobiSVD<Matrix> svd(coeffs, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {coeffs, svd};
}

}  // namespace

ThresholdResult bisect_threshold(const std::function<bool(double)>& detected, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_threshold: tolerance must be positive");
  ThresholdResult r;
  r.tolerance = tol;

  std::vector<bool> grid(kPrescanPoints);
  for (int g = 0; g < kPrescanPoints; ++g) {
    grid[static_cast<std::size_t>(g)] = detected(double(g) / (kPrescanPoints - 1));
    ++r.evaluations;
  }
  int transitions = 0;
  int first_detected = -1;
  for (int g = 1; g < kPrescanPoints; ++g) {
    if (grid[static_cast<std::size_t>(g)] != grid[static_cast<std::size_t>(g - 1)]) ++transitions;
  }
  for (int g = 0; g < kPrescanPoints; ++g) {
    if (grid[static_cast<std::size_t>(g)]) {
      first_detected = g;
      break;
    }
  }
  if (first_detected < 0) {
    throw ScanError(ScanError::Kind::no_crossing, "threshold scan: no detection anywhere on [0,1]");
  }
  if (first_detected == 0) {
    throw ScanError(ScanError::Kind::no_crossing, "threshold scan: already detected at x = 0");
  }
  if (transitions != 1) {
    throw ScanError(ScanError::Kind::not_monotone,
                    "threshold scan: detection switches " + std::to_string(transitions) +
                        " times on the pre-scan grid");
  }

  double lo = double(first_detected - 1) / (kPrescanPoints - 1);
  double hi = double(first_detected) / (kPrescanPoints - 1);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (detected(mid) ? hi : lo) = mid;
    ++r.evaluations;
  }
  r.x_lo = lo;
  r.x_hi = hi;
  r.x_critical = 0.5 * (lo + hi);
  return r;
}

ThresholdResult threshold_scan(const StateFamily& family, const Observable& a, const Observable& b,
                               std::size_t k, double tol) {
  for (const auto* m : {&a, &b}) {
    if (auto adm = is_admissible(*m, k); !adm.admissible) {
      throw AdmissibilityError(m == &a ? "A" : "B", adm.residual);
    }
  }
  return bisect_threshold(
      [&](double x) {
        return srpt_evaluate(family(x), a, b, k, AdmissibilityCheck::skip_unsound).violated;
      },
      tol);
}

ThresholdResult ppt_threshold_scan(const StateFamily& family, std::size_t k, double tol) {
  return bisect_threshold(
      [&](double x) { return -ppt_min_eigenvalue(family(x), k) > kPositivityTol; }, tol);
}

ObservablePair prop2_pair_from_params(std::span<const double> params, double bound) {
  if (params.size() != 2 * kProp2ParamsPerObservable) {
    throw std::invalid_argument("prop2_pair_from_params: expected 26 parameters");
  }
  return {prop2_observable(prop2_from(params.subspan(0, kProp2ParamsPerObservable), bound)),
          prop2_observable(prop2_from(params.subspan(kProp2ParamsPerObservable), bound))};
}

Eigen::VectorXd schmidt_coefficients(const StateVector& psi) {
  return schmidt_bases(psi).svd.singularValues();
}

ObservablePair schmidt_aligned_prop1_pair(const StateVector& psi, std::size_t i0, std::size_t i1) {
  const auto bases = schmidt_bases(psi);
  // psi = (U (x) conj V) sum_k s_k |kk>. Conjugating the witness by
  // conj(U) (x) conj(V) moves it into that frame on the partially transposed side.
  const Matrix rotation = kron({Matrix(bases.svd.matrixU().conjugate()),
                                Matrix(bases.svd.matrixV().conjugate())});
  const ObservablePair base = prop1_pair(psi.space(), i0, i1);
  const auto rotate = [&](const Observable& m) {
    const Matrix r = rotation * m.matrix() * rotation.adjoint();
    return Observable(psi.space(), Matrix((r + r.adjoint()) / 2.0));
  };
  return {rotate(base.a), rotate(base.b)};
}

SearchResult maximize_violation(const DensityMatrix& rho, WitnessFamily family,
                                const SearchOptions& options) {
  SearchResult result;
  result.best_report.slack = -std::numeric_limits<double>::infinity();

  if (family == WitnessFamily::prop1_schmidt) {
    const StateVector psi = pure_part(rho);
    const std::size_t levels = std::min(psi.space().dim(0), psi.space().dim(1));
    for (std::size_t i0 = 0; i0 < levels; ++i0)
      for (std::size_t i1 = i0 + 1; i1 < levels; ++i1) {
        const ObservablePair w = schmidt_aligned_prop1_pair(psi, i0, i1);
        const UncertaintyReport r = srpt_evaluate(psi, w.a, w.b);
        ++result.evaluations;
        ++result.restarts_used;
        if (r.slack > result.best_report.slack) {
          result.best_report = r;
          result.best_params = {double(i0), double(i1)};
        }
      }
    return result;
  }

  if (!(rho.space() == HilbertSpace{2, 2})) {
    throw DimensionMismatch("maximize_violation: prop2_pair family needs a (2,2) space");
  }
  const double bound = options.parameter_bound;
  const std::size_t dim = 2 * kProp2ParamsPerObservable;
  const SimplexMinimizer minimizer(dim, options.simplex_scale, options.max_iterations,
                                   options.size_tol);
  const auto objective = [&](std::span<const double> x) {
    const ObservablePair w = prop2_pair_from_params(x, bound);
    return -srpt_evaluate(rho, w.a, w.b, 0, AdmissibilityCheck::skip_unsound).slack;
  };

  for (int restart = 0; restart < options.restarts; ++restart) {
    const Minimum m =
        minimizer.minimize(objective, seeded_start(dim, options.seed, restart, bound / 2.0));
    result.evaluations += m.evaluations;
    ++result.restarts_used;
    // Strict comparison keeps the lowest restart index on ties.
    if (-m.value > result.best_report.slack) {
      const ObservablePair w = prop2_pair_from_params(m.x, bound);
      result.best_report = srpt_evaluate(rho, w.a, w.b);  // admissibility enforced here
      result.best_params = m.x;
    }
  }
  return result;
}

WernerPhiReport werner_phi_threshold(Complex a, Complex b, double phi, double tol) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-10) {
    throw std::invalid_argument("werner_phi_threshold: |a|^2 + |b|^2 must be 1");
  }
  const StateVector psi = schmidt_state({a, b}, 2, 2);
  const ObservablePair w = werner_bipartite_pair(phi);

  WernerPhiReport r;
  r.numeric = threshold_scan([&](double x) { return werner(psi, x); }, w.a, w.b, 0, tol);
  const double R = (std::polar(1.0, phi) * std::conj(a) * b).real();
  r.reduced_correlation = R;
  const double disc = 1.0 + 32.0 * R;
  r.linear_formula = disc >= 0.0 ? 2.0 / (1.0 + std::sqrt(disc))
                                 : std::numeric_limits<double>::quiet_NaN();
  r.squared_formula = 2.0 / (1.0 + std::sqrt(1.0 + 32.0 * R * R));
  r.linear_agrees = std::abs(r.numeric.x_critical - r.linear_formula) <= tol;
  r.squared_agrees = std::abs(r.numeric.x_critical - r.squared_formula) <= tol;
  return r;
}

nlohmann::json to_json(const ThresholdResult& r) {
  return {{"x_critical", r.x_critical}, {"x_lo", r.x_lo},           {"x_hi", r.x_hi},
          {"tolerance", r.tolerance},   {"evaluations", r.evaluations}};
}

nlohmann::json to_json(const SearchResult& r) {
  return {{"best_params", r.best_params},
          {"best_report", to_json(r.best_report)},
          {"restarts_used", r.restarts_used},
          {"evaluations", r.evaluations}};
}

nlohmann::json to_json(const WernerPhiReport& r) {
  const auto number_or_null = [](double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
  };
  return {{"numeric", to_json(r.numeric)},
          {"reduced_correlation", r.reduced_correlation},
          {"linear_formula", number_or_null(r.linear_formula)},
          {"squared_formula", r.squared_formula},
          {"linear_agrees", r.linear_agrees},
          {"squared_agrees", r.squared_agrees}};
}

}  // namespace srpt
