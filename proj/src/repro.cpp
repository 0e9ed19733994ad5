#include "srpt/repro.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "srpt/criteria.hpp"
#include "srpt/search.hpp"
#include "srpt/states.hpp"

namespace srpt {

namespace {

using nlohmann::json;
using Index = Eigen::Index;

constexpr const char* kPublished = "published";
constexpr const char* kAnalytic = "analytic";
constexpr const char* kNumeric = "numeric";

// ---------------------------------------------------------------------------
// Parameter parsing

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw UsageError("cannot parse " + what + " '" + text + "' as a number");
  }
  return value;
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw UsageError("cannot parse " + what + " '" + text + "' as a non-negative integer");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& what) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw UsageError("cannot parse " + what + " '" + text + "'");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

double number(const Params& p, const std::string& key) { return parse_double(p.at(key), key); }
std::size_t count(const Params& p, const std::string& key) { return parse_size(p.at(key), key); }

// ---------------------------------------------------------------------------
// Check construction

Check approx(std::string name, double measured, double expected, double tol, const char* source) {
  return {std::move(name), measured, expected, Relation::approx, tol, source, false};
}

Check greater(std::string name, double measured, double bound, const char* source) {
  return {std::move(name), measured, bound, Relation::greater, 0.0, source, false};
}

Check at_most(std::string name, double measured, double bound, const char* source) {
  return {std::move(name), measured, bound, Relation::at_most, 0.0, source, false};
}

Check flag(std::string name, bool measured, bool expected, const char* source) {
  return {std::move(name), measured ? 1.0 : 0.0, expected ? 1.0 : 0.0, Relation::approx, 0.0,
          source, false};
}

// ---------------------------------------------------------------------------
// Cases

CaseReport werner_bell(const Params& p) {
  const double tol = number(p, "tol");
  const StateVector bell = schmidt_state({1.0, 1.0}, 2, 2);
  const auto family = [&](double x) { return werner(bell, x); };
  const ObservablePair w = werner_bipartite_pair(0.0);
  const ThresholdResult srpt = threshold_scan(family, w.a, w.b, 0, tol);
  const ThresholdResult ppt = ppt_threshold_scan(family, 0, tol);

  CaseReport r;
  r.results = {{"srpt", to_json(srpt)}, {"ppt", to_json(ppt)}};
  r.checks.push_back(approx("srpt_threshold", srpt.x_critical, 0.5, tol, kPublished));
  r.checks.push_back(approx("ppt_threshold", ppt.x_critical, 1.0 / 3.0, tol, kPublished));
  return r;
}

CaseReport werner_phi(const Params& p) {
  const double tol = number(p, "tol");
  const Complex a(number(p, "a_re"), number(p, "a_im"));
  const Complex b(number(p, "b_re"), number(p, "b_im"));
  const double phi = number(p, "phi");
  const double norm = std::sqrt(std::norm(a) + std::norm(b));
  if (!(norm > 0.0)) throw UsageError("werner-phi: a and b cannot both vanish");

  CaseReport r;
  try {
    const WernerPhiReport rep = werner_phi_threshold(a / norm, b / norm, phi, tol);
    r.results = to_json(rep);
    r.checks.push_back(
        approx("threshold_vs_squared_formula", rep.numeric.x_critical, rep.squared_formula, tol,
               kAnalytic));
    Check linear = approx("threshold_vs_printed_formula", rep.numeric.x_critical,
                          rep.linear_formula, tol, kPublished);
    linear.known_discrepancy = true;
    r.checks.push_back(linear);
  } catch (const ScanError& e) {
    r.results = {{"scan_error", e.what()}};
    r.checks.push_back(flag("threshold_exists", false, true, kNumeric));
  }
  return r;
}

CaseReport ghz_scan(const Params& p) {
  const double tol = number(p, "tol");
  CaseReport r;
  r.results = json::object();
  for (const std::string& item : split(p.at("N"), ',')) {
    const std::size_t n = parse_size(item, "N");
    if (n < 2 || n > 10) throw UsageError("ghzN-scan: N must lie in [2, 10]");
    const auto family = [n](double x) { return werner_ghz(n, x); };
    const ObservablePair w = werner_multipartite_pair(n);
    const ThresholdResult srpt = threshold_scan(family, w.a, w.b, 0, tol);
    const ThresholdResult ppt = ppt_threshold_scan(family, 0, tol);
    r.results["N=" + item] = {{"srpt", to_json(srpt)}, {"ppt", to_json(ppt)}};
    const double srpt_expected = 1.0 / (1.0 + std::ldexp(1.0, int(n) - 2));
    const double ppt_expected = 1.0 / (1.0 + std::ldexp(1.0, int(n) - 1));
    r.checks.push_back(approx("srpt_threshold_N" + item, srpt.x_critical, srpt_expected, tol,
                              kPublished));
    r.checks.push_back(approx("ppt_threshold_N" + item, ppt.x_critical, ppt_expected, tol,
                              kPublished));
  }
  return r;
}

CaseReport prop1_demo(const Params& p) {
  const Complex c0(number(p, "c0_re"), number(p, "c0_im"));
  const Complex c1(number(p, "c1_re"), number(p, "c1_im"));
  const StateVector psi = schmidt_state({c0, c1}, 2, 2);
  const ObservablePair w = prop1_pair(psi.space(), 0, 1);
  const UncertaintyReport rep = srpt_evaluate(psi, w.a, w.b);
  const double n0 = std::norm(psi.amplitude({0, 0}));
  const double n1 = std::norm(psi.amplitude({1, 1}));

  CaseReport r;
  r.results = {{"report", to_json(rep)},
               {"admissibility_A", to_json(is_admissible(w.a))},
               {"admissibility_B", to_json(is_admissible(w.b))}};
  r.checks.push_back(approx("lhs", rep.lhs, 0.0, 1e-12, kPublished));
  r.checks.push_back(approx("rhs", rep.rhs, n0 * n1, 1e-10, kPublished));
  r.checks.push_back(flag("violated", rep.violated, n0 * n1 > kViolationTol, kPublished));
  return r;
}

CaseReport bad_observable_demo(const Params&) {
  const StateVector psi = StateVector::basis(HilbertSpace{2, 2}, {0, 0});
  const Observable a(HilbertSpace{2, 2}, kron({pauli_x(), pauli_x()}));
  const Observable b(HilbertSpace{2, 2},
                     kron({pauli_x(), pauli_y()}) + kron({pauli_y(), pauli_x()}));
  const UncertaintyReport unchecked =
      srpt_evaluate(psi, a, b, 0, AdmissibilityCheck::skip_unsound);
  const AdmissibilityReport adm_a = is_admissible(a);
  const AdmissibilityReport adm_b = is_admissible(b);
  bool refused = false;
  try {
    (void)srpt_evaluate(psi, a, b);
  } catch (const AdmissibilityError&) {
    refused = true;
  }
  const double ppt = ppt_min_eigenvalue(density_from_pure(psi));

  CaseReport r;
  r.results = {{"unchecked_report", to_json(unchecked)},
               {"admissibility_A", to_json(adm_a)},
               {"admissibility_B", to_json(adm_b)},
               {"enforced_evaluation_refused", refused},
               {"ppt_min_eigenvalue", ppt},
               {"note", "state is separable; the violation comes from an inadmissible B"}};
  r.checks.push_back(flag("unchecked_violation_on_separable_state", unchecked.violated, true,
                          kPublished));
  r.checks.push_back(greater("admissibility_residual_B", adm_b.residual, 0.1, kPublished));
  r.checks.push_back(flag("A_admissible", adm_a.admissible, true, kPublished));
  r.checks.push_back(flag("enforced_evaluation_refused", refused, true, kAnalytic));
  r.checks.push_back(greater("ppt_min_eigenvalue", ppt, -kPositivityTol, kAnalytic));
  return r;
}

CaseReport prop3(const Params& p) {
  const double l[5] = {number(p, "l0"), number(p, "l1"), number(p, "l2"), number(p, "l3"),
                       number(p, "l4")};
  const StateVector psi = acin_state(l[0], l[1], l[2], l[3], l[4], number(p, "phase"));
  const double n0 = std::abs(psi.amplitude({0, 0, 0}));
  const double partner[3] = {std::abs(psi.amplitude({1, 0, 1})), std::abs(psi.amplitude({1, 1, 0})),
                             std::abs(psi.amplitude({1, 1, 1}))};
  CaseReport r;
  r.results = json::object();
  for (int which = 1; which <= 3; ++which) {
    const ObservablePair w = prop3_triple(which);
    const UncertaintyReport rep = srpt_evaluate(psi, w.a, w.b);
    const std::string tag = "triple" + std::to_string(which);
    const double expected = std::pow(n0 * partner[which - 1], 2);
    r.results[tag] = to_json(rep);
    r.checks.push_back(approx(tag + "_lhs", rep.lhs, 0.0, 1e-12, kPublished));
    r.checks.push_back(approx(tag + "_rhs", rep.rhs, expected, 1e-10, kPublished));
    r.checks.push_back(flag(tag + "_violated", rep.violated, expected > kViolationTol, kPublished));
  }
  return r;
}

CaseReport osc2d(const Params& p) {
  const std::size_t n_max = count(p, "n_max");
  if (n_max < 1 || n_max > 12) throw UsageError("osc2d: n_max must lie in [1, 12]");
  CaseReport r;
  r.results = json::array();
  for (std::size_t n = 0; n <= n_max; ++n) {
    const ObservablePair w = oscillator2d_pair(std::max<std::size_t>(n, 1));
    for (const auto& e : oscillator2d_eigenstates(n)) {
      const UncertaintyReport rep = srpt_evaluate(e.vector, w.a, w.b);
      const std::string tag = "n" + std::to_string(n) + "_M" + std::to_string(e.m);
      r.results.push_back({{"n", n}, {"M", e.m}, {"report", to_json(rep)},
                           {"eigen_residual", e.residual}});
      if (n == 0) {
        r.checks.push_back(flag(tag + "_violated", rep.violated, false, kAnalytic));
        continue;
      }
      const double expected = std::norm(e.coeffs.front()) * std::norm(e.coeffs.back());
      r.checks.push_back(approx(tag + "_lhs", rep.lhs, 0.0, 1e-12, kPublished));
      r.checks.push_back(approx(tag + "_rhs", rep.rhs, expected, 1e-10, kPublished));
      r.checks.push_back(greater(tag + "_rhs_positive", rep.rhs, 1e-6, kPublished));
      r.checks.push_back(flag(tag + "_violated", rep.violated, true, kPublished));
    }
  }
  return r;
}

CaseReport osc3d(const Params& p) {
  const std::size_t n_max = count(p, "n_max");
  if (n_max < 1 || n_max > 6) throw UsageError("osc3d: n_max must lie in [1, 6]");
  CaseReport r;
  r.results = json::array();
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (const auto& e : oscillator3d_eigenstates(n)) {
      const std::string tag =
          "n" + std::to_string(n) + "_l" + std::to_string(e.l) + "_m" + std::to_string(e.m);
      json entry{{"n", n}, {"l", e.l}, {"m", e.m}, {"lz_residual", e.lz_residual},
                 {"l2_residual", e.l2_residual}};
      if (n == 1 && e.m == 0) {
        // |0,0,1>: a product state; neither n = 1 witness may fire.
        for (int m : {-1, 1}) {
          const ObservablePair w = oscillator3d_pair(1, m);
          const UncertaintyReport rep = srpt_evaluate(e.vector, w.a, w.b);
          entry["report_m" + std::to_string(m)] = to_json(rep);
          r.checks.push_back(
              flag(tag + "_violated_by_m" + std::to_string(m), rep.violated, false, kPublished));
        }
        r.results.push_back(entry);
        continue;
      }
      const ObservablePair w = oscillator3d_pair(n, e.m);
      const UncertaintyReport rep = srpt_evaluate(e.vector, w.a, w.b);
      const std::size_t q = e.m == 0 ? 2 : static_cast<std::size_t>(std::abs(e.m));
      const double expected = std::norm(e.coeffs[q][0]) * std::norm(e.coeffs[q][q]);
      entry["report"] = to_json(rep);
      r.results.push_back(entry);
      r.checks.push_back(approx(tag + "_lhs", rep.lhs, 0.0, 1e-12, kPublished));
      r.checks.push_back(approx(tag + "_rhs", rep.rhs, expected, 1e-10, kPublished));
      r.checks.push_back(flag(tag + "_violated", rep.violated, true, kPublished));
    }
  }
  return r;
}

CaseReport multiphoton(const Params& p) {
  const StateVector psi = multiphoton_state({number(p, "alpha_re"), number(p, "alpha_im")},
                                            {number(p, "beta_re"), number(p, "beta_im")},
                                            {number(p, "gamma_re"), number(p, "gamma_im")});
  const ObservablePair w = multiphoton_pair();
  const UncertaintyReport rep = srpt_evaluate(psi, w.a, w.b);
  const Complex alpha = psi.amplitude({0, 2});
  const Complex gamma = psi.amplitude({2, 0});
  const double re = (std::conj(alpha) * gamma).real();

  const Observable anti_t = partial_transpose(anticommutator(w.a, w.b));
  const HilbertSpace space{3, 3};
  Vector plus = Vector::Zero(9), minus = Vector::Zero(9);
  plus(Index(space.index({0, 2}))) = minus(Index(space.index({0, 2}))) = 1.0 / std::sqrt(2.0);
  plus(Index(space.index({2, 0}))) = 1.0 / std::sqrt(2.0);
  minus(Index(space.index({2, 0}))) = -1.0 / std::sqrt(2.0);
  const Matrix projector_difference = plus * plus.adjoint() - minus * minus.adjoint();
  const double deviation = (anti_t.matrix() - projector_difference).cwiseAbs().maxCoeff();

  CaseReport r;
  r.results = {{"report", to_json(rep)}, {"re_alpha_conj_gamma", re},
               {"anticommutator_projector_deviation", deviation}};
  r.checks.push_back(approx("lhs", rep.lhs, 0.0, 1e-12, kPublished));
  r.checks.push_back(approx("anticomm_term", rep.anticomm_term, re * re, 1e-10, kPublished));
  r.checks.push_back(at_most("anticommutator_projector_deviation", deviation, 1e-12, kPublished));
  r.checks.push_back(flag("violated", rep.violated, re * re > kViolationTol, kPublished));
  return r;
}

struct CatEvaluation {
  UncertaintyReport report;
  double var_a;
  double var_b;
};

CatEvaluation evaluate_cat(double alpha, double beta, std::size_t truncation) {
  const StateVector psi = cat_state(alpha, beta, truncation);
  const double a1 = -beta, a2 = beta, b1 = alpha, b2 = -alpha;
  const ObservablePair w = cat_quadratures(a1, a2, b1, b2, truncation);
  return {srpt_evaluate(psi, w.a, w.b), variance(psi, partial_transpose(w.a)),
          variance(psi, partial_transpose(w.b))};
}

CaseReport cat(const Params& p) {
  const double alpha = number(p, "alpha");
  const double beta = number(p, "beta");
  const std::size_t trunc = count(p, "truncation");
  const std::size_t coarse = count(p, "compare_truncation");
  const CatEvaluation fine = evaluate_cat(alpha, beta, trunc);
  const CatEvaluation rough = evaluate_cat(alpha, beta, coarse);

  const double a1 = -beta, a2 = beta, b1 = alpha, b2 = -alpha;
  const double n2 = 2.0 + 2.0 * std::exp(-2.0 * alpha * alpha - 2.0 * beta * beta);
  const double var_a = a1 * a1 + b1 * b1 + 8.0 * std::pow(a1 * alpha + b1 * beta, 2) / n2;
  const double var_b = a2 * a2 + b2 * b2 -
                       4.0 * std::pow(a2 * alpha - b2 * beta, 2) /
                           (1.0 + std::exp(2.0 * alpha * alpha + 2.0 * beta * beta));
  const double comm = std::pow(a1 * a2 + b1 * b2, 2);

  CaseReport r;
  r.results = {{"report", to_json(fine.report)},
               {"compare_report", to_json(rough.report)},
               {"var_A_T", fine.var_a},
               {"var_B_T", fine.var_b},
               {"formula_var_A_T", var_a},
               {"formula_var_B_T", var_b},
               {"formula_comm_term", comm}};
  r.checks.push_back(approx("var_A_T", fine.var_a, var_a, 1e-6, kPublished));
  r.checks.push_back(approx("var_B_T", fine.var_b, var_b, 1e-6, kPublished));
  r.checks.push_back(approx("comm_term", fine.report.comm_term, comm, 1e-6, kPublished));
  r.checks.push_back(approx("anticomm_term", fine.report.anticomm_term, 0.0, 1e-6, kPublished));
  r.checks.push_back(flag("violated", fine.report.violated, alpha != 0.0 && beta != 0.0,
                          kPublished));
  r.checks.push_back(approx("truncation_lhs_change", fine.report.lhs, rough.report.lhs, 1e-6,
                            kNumeric));
  r.checks.push_back(approx("truncation_rhs_change", fine.report.rhs, rough.report.rhs, 1e-6,
                            kNumeric));
  r.checks.push_back(approx("truncation_slack_change", fine.report.slack, rough.report.slack, 1e-6,
                            kNumeric));
  return r;
}

struct DuanScan {
  double min_margin;  // min over a of (lhs_sum - bound)
  double argmin;
  int violations;
  json rows;
};

DuanScan duan_scan(const StateVector& psi, std::size_t points) {
  DuanScan s{std::numeric_limits<double>::infinity(), 0.0, 0, json::array()};
  for (std::size_t k = 0; k < points; ++k) {
    // Log-spaced over [1/4, 4].
    const double t = points == 1 ? 0.5 : double(k) / double(points - 1);
    const double a = 0.25 * std::pow(16.0, t);
    const DuanReport rep = duan_criterion(psi, a);
    const double margin = rep.lhs_sum - rep.bound;
    if (margin < s.min_margin) {
      s.min_margin = margin;
      s.argmin = a;
    }
    if (rep.violated) ++s.violations;
    s.rows.push_back(to_json(rep));
  }
  return s;
}

CaseReport duan_cat(const Params& p) {
  const double alpha = number(p, "alpha");
  const double beta = number(p, "beta");
  const std::size_t points = count(p, "points");
  if (points < 1) throw UsageError("duan-cat: points must be >= 1");
  const DuanScan fine = duan_scan(cat_state(alpha, beta, count(p, "truncation")), points);
  const DuanScan rough =
      duan_scan(cat_state(alpha, beta, count(p, "compare_truncation")), points);

  CaseReport r;
  r.results = {{"scan", fine.rows}, {"min_margin", fine.min_margin}, {"argmin_a", fine.argmin},
               {"compare_min_margin", rough.min_margin}};
  r.checks.push_back(at_most("violations", fine.violations, 0.0, kPublished));
  r.checks.push_back(greater("min_margin", fine.min_margin, -kViolationTol, kPublished));
  r.checks.push_back(approx("truncation_min_margin_change", fine.min_margin, rough.min_margin, 1e-6,
                            kNumeric));
  return r;
}

std::string default_amplitude() { return format_number(1.0 / std::sqrt(2.0)); }

std::vector<CaseInfo> build_registry() {
  return {
      {"werner-bell", "Bell-state Werner mixture: SRPT and PPT detection thresholds",
       {{"tol", "1e-6"}}, werner_bell},
      {"werner-phi",
       "Werner mixture of a|00>+b|11> with the rotated pair: bisection vs closed forms",
       {{"a_re", default_amplitude()}, {"a_im", "0"}, {"b_re", default_amplitude()},
        {"b_im", "0"}, {"phi", "0"}, {"tol", "1e-6"}},
       werner_phi},
      {"ghzN-scan", "GHZ_N Werner mixtures: SRPT and PPT thresholds", {{"N", "3,4,5"}, {"tol", "1e-6"}},
       ghz_scan},
      {"prop1-demo", "Two-level Schmidt state with the |01><01|, s_x s_x pair",
       {{"c0_re", "0.6"}, {"c0_im", "0"}, {"c1_re", "0"}, {"c1_im", "0.8"}}, prop1_demo},
      {"bad-observable-demo", "Inadmissible observable producing a violation on |00>", {},
       bad_observable_demo},
      {"prop3", "Three-qubit canonical form with the three observable triples",
       {{"l0", "0.5"}, {"l1", "0.3"}, {"l2", "0.4"}, {"l3", "0.45"}, {"l4", "0.55"},
        {"phase", "0.7"}},
       prop3},
      {"osc2d", "2D oscillator L_z eigenstates with the |00>, s_x(0,n) s_x(0,n) witness",
       {{"n_max", "4"}}, osc2d},
      {"osc3d", "3D oscillator (l, m) eigenstates with their designated witnesses",
       {{"n_max", "2"}}, osc3d},
      {"multiphoton", "Two-photon polarization state with the projector pair",
       {{"alpha_re", default_amplitude()}, {"alpha_im", "0"}, {"beta_re", "0"}, {"beta_im", "0"},
        {"gamma_re", default_amplitude()}, {"gamma_im", "0"}},
       multiphoton},
      {"cat", "Two-mode cat state with quadrature observables; closed forms and convergence",
       {{"alpha", "1"}, {"beta", "1"}, {"truncation", "32"}, {"compare_truncation", "24"}}, cat},
      {"duan-cat", "Duan criterion scanned over a in [1/4, 4] on the cat state",
       {{"alpha", "1"}, {"beta", "1"}, {"truncation", "32"}, {"compare_truncation", "24"},
        {"points", "61"}},
       duan_cat},
  };
}

// ---------------------------------------------------------------------------
// Named constructors

struct Descriptor {
  std::string name;
  std::vector<std::string> args;
};

Descriptor parse_descriptor(const std::string& text) {
  const auto colon = text.find(':');
  Descriptor s{text.substr(0, colon), {}};
  if (colon != std::string::npos) s.args = split(text.substr(colon + 1), ',');
  return s;
}

void require_args(const Descriptor& s, std::size_t lo, std::size_t hi) {
  if (s.args.size() < lo || s.args.size() > hi) {
    throw UsageError("'" + s.name + "' expects " + std::to_string(lo) +
                     (lo == hi ? "" : "-" + std::to_string(hi)) + " arguments");
  }
}

double arg_double(const Descriptor& s, std::size_t i) { return parse_double(s.args[i], s.name + " argument"); }
std::size_t arg_size(const Descriptor& s, std::size_t i) { return parse_size(s.args[i], s.name + " argument"); }

}  // namespace

bool Check::holds() const {
  switch (relation) {
    case Relation::approx:
      return std::isfinite(measured) && std::isfinite(expected) &&
             std::abs(measured - expected) <= tolerance;
    case Relation::greater:
      return measured > expected;
    case Relation::at_most:
      return measured <= expected;
  }
  return false;
}

std::string Check::status() const {
  if (holds()) return "pass";
  return known_discrepancy ? "discrepancy" : "fail";
}

bool CaseReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.status() != "fail"; });
}

const std::vector<CaseInfo>& registered_cases() {
  static const std::vector<CaseInfo> registry = build_registry();
  return registry;
}

CaseReport run_case(const std::string& id, const Params& overrides) {
  const auto& cases = registered_cases();
  const auto it = std::find_if(cases.begin(), cases.end(), [&](const auto& c) { return c.id == id; });
  if (it == cases.end()) throw UsageError("unknown case '" + id + "'");
  Params params = it->defaults;
  for (const auto& [key, value] : overrides) {
    if (!params.contains(key)) throw UsageError("case '" + id + "' has no parameter '" + key + "'");
    params[key] = value;
  }
  CaseReport report;
  try {
    report = it->run(params);
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(id + ": " + e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(id + ": " + e.what());
  }
  report.id = id;
  report.parameters = params;
  return report;
}

std::string render_json(const CaseReport& report) {
  json checks = json::array();
  for (const Check& c : report.checks) {
    const char* relation = c.relation == Relation::approx    ? "approx"
                           : c.relation == Relation::greater ? "greater"
                                                             : "at_most";
    checks.push_back({{"name", c.name},
                      {"measured", std::isfinite(c.measured) ? json(c.measured) : json(nullptr)},
                      {"expected", std::isfinite(c.expected) ? json(c.expected) : json(nullptr)},
                      {"relation", relation},
                      {"tolerance", c.tolerance},
                      {"source", c.source},
                      {"status", c.status()}});
  }
  json out{{"case", report.id},
           {"parameters", report.parameters},
           {"results", report.results},
           {"checks", checks},
           {"passed", report.passed()}};
  return out.dump(2) + "\n";
}

std::string render_csv(const CaseReport& report) {
  std::ostringstream os;
  os << "case,check,measured,expected,relation,tolerance,source,status\n";
  for (const Check& c : report.checks) {
    const char* relation = c.relation == Relation::approx    ? "approx"
                           : c.relation == Relation::greater ? "greater"
                                                             : "at_most";
    os << report.id << ',' << c.name << ',' << format_number(c.measured) << ','
       << format_number(c.expected) << ',' << relation << ',' << format_number(c.tolerance) << ','
       << c.source << ',' << c.status() << '\n';
  }
  return os.str();
}

ObservablePair named_witness(const std::string& text) {
  const Descriptor s = parse_descriptor(text);
  if (s.name == "prop1") {
    require_args(s, 2, 4);
    const std::size_t i0 = arg_size(s, 0), i1 = arg_size(s, 1);
    const std::size_t fallback = std::max<std::size_t>(std::max(i0, i1) + 1, 2);
    const std::size_t d1 = s.args.size() > 2 ? arg_size(s, 2) : fallback;
    const std::size_t d2 = s.args.size() > 3 ? arg_size(s, 3) : d1;
    return prop1_pair(HilbertSpace{d1, d2}, i0, i1);
  }
  if (s.name == "prop2") {
    require_args(s, 26, 26);
    std::vector<double> raw(26);
    for (std::size_t i = 0; i < 26; ++i) raw[i] = arg_double(s, i);
    return prop2_pair_from_params(raw, std::numeric_limits<double>::infinity());
  }
  if (s.name == "prop3") {
    require_args(s, 1, 1);
    return prop3_triple(parse_int(s.args[0], "prop3 selector"));
  }
  if (s.name == "osc2d") {
    require_args(s, 1, 1);
    return oscillator2d_pair(arg_size(s, 0));
  }
  if (s.name == "osc3d") {
    require_args(s, 2, 2);
    return oscillator3d_pair(arg_size(s, 0), parse_int(s.args[1], "osc3d m"));
  }
  if (s.name == "multiphoton") {
    require_args(s, 0, 0);
    return multiphoton_pair();
  }
  if (s.name == "cat") {
    require_args(s, 5, 5);
    return cat_quadratures(arg_double(s, 0), arg_double(s, 1), arg_double(s, 2), arg_double(s, 3),
                           arg_size(s, 4));
  }
  if (s.name == "werner2") {
    require_args(s, 0, 1);
    return werner_bipartite_pair(s.args.empty() ? 0.0 : arg_double(s, 0));
  }
  if (s.name == "wernerN") {
    require_args(s, 1, 1);
    return werner_multipartite_pair(arg_size(s, 0));
  }
  throw UsageError("unknown witness '" + s.name + "'\n" + witness_help());
}

std::string witness_help() {
  return "witnesses:\n"
         "  prop1:i0,i1[,d1[,d2]]   |i0 i1><i0 i1|, s_x(i0,i1) s_x(i0,i1)\n"
         "  prop2:<26 numbers>      two (a,b,c,d,eta) two-qubit observables\n"
         "  prop3:1|2|3             three-qubit triples\n"
         "  osc2d:n                 |00><00|, s_x(0,n) s_x(0,n)\n"
         "  osc3d:n,m               3D oscillator pair\n"
         "  multiphoton             |00><00|, s_x(0,2) s_x(0,2)\n"
         "  cat:a1,a2,b1,b2,trunc   quadrature pair\n"
         "  werner2[:phi]           s_z s_z, s_x (cos phi s_x + sin phi s_y)\n"
         "  wernerN:N               GHZ_N Werner pair\n";
}

AnyState named_state(const std::string& text) {
  const Descriptor s = parse_descriptor(text);
  if (s.name == "bell") {
    require_args(s, 0, 0);
    return schmidt_state({1.0, 1.0}, 2, 2);
  }
  if (s.name == "product") {
    require_args(s, 1, 64);
    std::vector<std::size_t> digits;
    for (std::size_t i = 0; i < s.args.size(); ++i) digits.push_back(arg_size(s, i));
    return StateVector::basis(HilbertSpace(std::vector<std::size_t>(digits.size(), 2)), digits);
  }
  if (s.name == "schmidt") {
    require_args(s, 1, 32);
    std::vector<Complex> c;
    for (std::size_t i = 0; i < s.args.size(); ++i) c.emplace_back(arg_double(s, i));
    const std::size_t d = std::max<std::size_t>(c.size(), 2);
    return schmidt_state(c, d, d);
  }
  if (s.name == "acin") {
    require_args(s, 5, 6);
    return acin_state(arg_double(s, 0), arg_double(s, 1), arg_double(s, 2), arg_double(s, 3),
                      arg_double(s, 4), s.args.size() > 5 ? arg_double(s, 5) : 0.0);
  }
  if (s.name == "ghz") {
    require_args(s, 1, 1);
    return ghz(arg_size(s, 0));
  }
  if (s.name == "werner-bell") {
    require_args(s, 1, 1);
    return werner(schmidt_state({1.0, 1.0}, 2, 2), arg_double(s, 0));
  }
  if (s.name == "werner-ghz") {
    require_args(s, 2, 2);
    return werner_ghz(arg_size(s, 0), arg_double(s, 1));
  }
  if (s.name == "osc2d") {
    require_args(s, 2, 2);
    const int m = parse_int(s.args[1], "osc2d M");
    for (const auto& e : oscillator2d_eigenstates(arg_size(s, 0))) {
      if (e.m == m) return e.vector;
    }
    throw UsageError("osc2d: no eigenstate with M = " + s.args[1]);
  }
  if (s.name == "osc3d") {
    require_args(s, 3, 3);
    const int l = parse_int(s.args[1], "osc3d l");
    const int m = parse_int(s.args[2], "osc3d m");
    for (const auto& e : oscillator3d_eigenstates(arg_size(s, 0))) {
      if (e.l == l && e.m == m) return e.vector;
    }
    throw UsageError("osc3d: no eigenstate with (l, m) = (" + s.args[1] + ", " + s.args[2] + ")");
  }
  if (s.name == "cat") {
    require_args(s, 3, 3);
    return cat_state(arg_double(s, 0), arg_double(s, 1), arg_size(s, 2));
  }
  if (s.name == "multiphoton") {
    require_args(s, 3, 3);
    return multiphoton_state(arg_double(s, 0), arg_double(s, 1), arg_double(s, 2));
  }
  throw UsageError("unknown state '" + s.name + "'\n" + state_help());
}

std::string state_help() {
  return "states:\n"
         "  bell                    (|00> + |11>)/sqrt 2\n"
         "  product:b0,b1,...       computational basis state of qubits\n"
         "  schmidt:c0,c1,...       normalized sum c_i |ii>\n"
         "  acin:l0,l1,l2,l3,l4[,phase]\n"
         "  ghz:N\n"
         "  werner-bell:x           x |phi+><phi+| + (1-x) 1/4\n"
         "  werner-ghz:N,x\n"
         "  osc2d:n,M               2D oscillator eigenstate\n"
         "  osc3d:n,l,m             3D oscillator eigenstate\n"
         "  cat:alpha,beta,trunc\n"
         "  multiphoton:alpha,beta,gamma\n";
}

std::string oscillator2d_csv(std::size_t n) {
  std::ostringstream os;
  os << "n,M,i,re,im\n";
  for (const auto& e : oscillator2d_eigenstates(n)) {
    for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
      os << n << ',' << e.m << ',' << i << ',' << format_number(e.coeffs[i].real()) << ','
         << format_number(e.coeffs[i].imag()) << '\n';
    }
  }
  return os.str();
}

std::string oscillator3d_csv(std::size_t n) {
  std::ostringstream os;
  os << "n,l,m,i,j,re,im\n";
  for (const auto& e : oscillator3d_eigenstates(n)) {
    for (std::size_t i = 0; i < e.coeffs.size(); ++i)
      for (std::size_t j = 0; j < e.coeffs[i].size(); ++j) {
        os << n << ',' << e.l << ',' << e.m << ',' << i << ',' << j << ','
           << format_number(e.coeffs[i][j].real()) << ',' << format_number(e.coeffs[i][j].imag())
           << '\n';
      }
  }
  return os.str();
}

}  // namespace srpt
