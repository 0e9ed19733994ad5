// Detection-threshold bisection for one-parameter state families, and
// derivative-free maximization of SRPT violation over admissible witnesses.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "srpt/criteria.hpp"
#include "srpt/hilbert.hpp"
#include "srpt/witnesses.hpp"

namespace srpt {

inline constexpr double kThresholdTol = 1e-6;
inline constexpr int kPrescanPoints = 21;

using StateFamily = std::function<DensityMatrix(double)>;

struct ThresholdResult {
  double x_critical = 0.0;
  double x_lo = 0.0;
  double x_hi = 1.0;
  double tolerance = kThresholdTol;
  int evaluations = 0;
};

class ScanError : public std::runtime_error {
 public:
  enum class Kind { no_crossing, not_monotone };
  ScanError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Smallest x in [0,1] beyond which the pair (A, B) detects the family. The
// 21-point pre-scan must show a single undetected -> detected transition.
ThresholdResult threshold_scan(const StateFamily& family, const Observable& a, const Observable& b,
                               std::size_t k = 0, double tol = kThresholdTol);

// Same with the detection signal -ppt_min_eigenvalue > kPositivityTol.
ThresholdResult ppt_threshold_scan(const StateFamily& family, std::size_t k = 0,
                                   double tol = kThresholdTol);

// Generic form: detected(x) must switch once from false to true on [0,1].
ThresholdResult bisect_threshold(const std::function<bool(double)>& detected, double tol);

enum class WitnessFamily {
  // Two observables of the (a,b,c,d,eta) admissible two-qubit form; 26 parameters.
  prop2_pair,
  // prop1_pair on every pair of Schmidt levels of a pure bipartite state,
  // rotated into the state's local Schmidt bases.
  prop1_schmidt,
};

struct SearchOptions {
  int restarts = 20;
  std::uint64_t seed = 0;
  int max_iterations = 500;
  double simplex_scale = 0.5;
  double size_tol = 1e-8;
  // Bound on every Prop2 vector norm and on |eta|.
  double parameter_bound = 4.0;
};

struct SearchResult {
  std::vector<double> best_params;
  UncertaintyReport best_report;
  int restarts_used = 0;
  int evaluations = 0;
};

SearchResult maximize_violation(const DensityMatrix& rho, WitnessFamily family,
                                const SearchOptions& options = {});

// Maps a raw 26-vector onto two Prop2 observables, clamping vector norms and
// |eta| to `bound`.
ObservablePair prop2_pair_from_params(std::span<const double> params, double bound);

// Witnesses for a pure bipartite state: prop1_pair(i0, i1) expressed in the
// state's Schmidt bases.
ObservablePair schmidt_aligned_prop1_pair(const StateVector& psi, std::size_t i0, std::size_t i1);
// Schmidt coefficients (descending) of a pure bipartite state.
Eigen::VectorXd schmidt_coefficients(const StateVector& psi);

// Threshold of x|psi><psi| + (1-x)1/4, psi = a|00> + b|11>, with
// werner_bipartite_pair(phi), found by bisection. Alongside it, the closed
// forms 2/(1+sqrt(1+32 R)) and 2/(1+sqrt(1+32 R^2)), R = Re(e^{i phi} a* b),
// are evaluated and compared.
struct WernerPhiReport {
  ThresholdResult numeric;
  double reduced_correlation = 0.0;  // R
  double linear_formula = 0.0;       // NaN when 1 + 32R < 0
  double squared_formula = 0.0;
  bool linear_agrees = false;
  bool squared_agrees = false;
};

WernerPhiReport werner_phi_threshold(Complex a, Complex b, double phi, double tol = kThresholdTol);

nlohmann::json to_json(const ThresholdResult& r);
nlohmann::json to_json(const SearchResult& r);
nlohmann::json to_json(const WernerPhiReport& r);

}  // namespace srpt
