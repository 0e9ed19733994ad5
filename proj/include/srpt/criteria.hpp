// Schrödinger-Robertson relation, its partial-transpose (SRPT) form, the
// admissibility condition on observables, and the PPT and Duan criteria.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "srpt/hilbert.hpp"

namespace srpt {

inline constexpr double kViolationTol = 1e-9;
inline constexpr double kAdmissibilityTol = 1e-10;

// Both sides of  (dA)^2 (dB)^2 >= 1/4 |<[A,B]>|^2 + 1/4 |<{A,B}> - 2<A><B>|^2.
struct UncertaintyReport {
  double lhs = 0.0;
  double comm_term = 0.0;
  double anticomm_term = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool violated = false;
  double violation_tol = kViolationTol;

  // The Heisenberg relation keeps only the commutator term.
  double heisenberg_rhs() const { return comm_term; }
};

struct AdmissibilityReport {
  double residual = 0.0;  // || (M^T)^2 - (M^2)^T ||_F
  bool admissible = false;
  double tolerance = kAdmissibilityTol;
};

class AdmissibilityError : public std::domain_error {
 public:
  AdmissibilityError(std::string observable, double residual);
  const std::string& observable() const { return observable_; }
  double residual() const { return residual_; }

 private:
  std::string observable_;
  double residual_;
};

// Selects whether srpt_evaluate refuses inadmissible observables. The skip mode
// gives results that do NOT certify entanglement; it exists to demonstrate what
// goes wrong with observables that fail the admissibility condition.
enum class AdmissibilityCheck { enforce, skip_unsound };

UncertaintyReport sr_uncertainty(const DensityMatrix& rho, const Observable& a,
                                 const Observable& b, double violation_tol = kViolationTol);
UncertaintyReport sr_uncertainty(const StateVector& psi, const Observable& a,
                                 const Observable& b, double violation_tol = kViolationTol);

AdmissibilityReport is_admissible(const Observable& m, std::size_t k = 0,
                                  double adm_tol = kAdmissibilityTol);

// Evaluates the inequality with every operator partially transposed on
// subsystem k. The commutator and anticommutator are formed first and then
// transposed. A violation certifies entanglement across the (k | rest) cut.
UncertaintyReport srpt_evaluate(const DensityMatrix& rho, const Observable& a, const Observable& b,
                                std::size_t k = 0,
                                AdmissibilityCheck check = AdmissibilityCheck::enforce,
                                double violation_tol = kViolationTol);
UncertaintyReport srpt_evaluate(const StateVector& psi, const Observable& a, const Observable& b,
                                std::size_t k = 0,
                                AdmissibilityCheck check = AdmissibilityCheck::enforce,
                                double violation_tol = kViolationTol);

// Smallest eigenvalue of rho^T_k; below -kPositivityTol certifies entanglement.
double ppt_min_eigenvalue(const DensityMatrix& rho, std::size_t k = 0);

// Duan et al. with u = |a| x1 + x2 / a, v = |a| p1 - p2 / a,
// x = (a^dagger + a)/sqrt 2, p = i(a^dagger - a)/sqrt 2. Separable states obey
// Var(u) + Var(v) >= a^2 + 1/a^2.
struct DuanReport {
  double a_param = 1.0;
  double lhs_sum = 0.0;
  double bound = 0.0;
  bool violated = false;
  double violation_tol = kViolationTol;
};

DuanReport duan_criterion(const DensityMatrix& rho, double a_param,
                          double violation_tol = kViolationTol);
DuanReport duan_criterion(const StateVector& psi, double a_param,
                          double violation_tol = kViolationTol);

nlohmann::json to_json(const UncertaintyReport& r);
nlohmann::json to_json(const AdmissibilityReport& r);
nlohmann::json to_json(const DuanReport& r);

}  // namespace srpt
