// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "srpt/criteria.hpp"
#include "srpt/search.hpp"
#include "srpt/states.hpp"
#include "srpt/witnesses.hpp"

using namespace srpt;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "failed: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds, 0 for none
  std::function<void(Outcome&)> body;
};

StateVector bell() { return schmidt_state({1.0, 1.0}, 2, 2); }

// Places a two-qubit operator on qubits (q0, q1) of an n-qubit register.
Matrix embed_pair(const Matrix& op, std::size_t q0, std::size_t q1, std::size_t n) {
  const oracle::Dims dims(n, 2);
  const std::size_t dim = std::size_t(1) << n;
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) {
      const auto dr = oracle::digits(r, dims), dc = oracle::digits(c, dims);
      bool rest_equal = true;
      for (std::size_t q = 0; q < n; ++q)
        if (q != q0 && q != q1 && dr[q] != dc[q]) rest_equal = false;
      if (!rest_equal) continue;
      out(r, c) = op(dr[q0] * 2 + dr[q1], dc[q0] * 2 + dc[q1]);
    }
  return out;
}

Prop2Params random_prop2(oracle::Rng& rng) {
  Prop2Params p;
  for (int i = 0; i < 3; ++i) {
    p.a(i) = rng.normal();
    p.b(i) = rng.normal();
    p.c(i) = rng.normal();
    p.d(i) = rng.normal();
  }
  p.eta = rng.normal();
  return p;
}

// Tensor product of random one-body Hermitian factors.
Matrix random_product_operator(oracle::Rng& rng, const oracle::Dims& dims) {
  Matrix m = rng.hermitian(dims[0]);
  for (std::size_t k = 1; k < dims.size(); ++k) m = oracle::kron(m, rng.hermitian(dims[k]));
  return m;
}

Matrix random_separable_oracle(oracle::Rng& rng, const oracle::Dims& dims) {
  const std::size_t n = oracle::total(dims);
  const int terms = 1 + int(rng.index(5));
  Matrix rho = Matrix::Zero(n, n);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    oracle::Vec v = rng.unit_vector(dims[0]);
    for (std::size_t k = 1; k < dims.size(); ++k) v = oracle::kron(v, rng.unit_vector(dims[k]));
    const double w = rng.uniform(0.01, 1.0);
    rho += w * v * v.adjoint();
    total += w;
  }
  rho /= total;
  return 0.5 * (rho + rho.adjoint());
}

void werner_bipartite(Outcome& out) {
  const auto family = [](double x) { return werner(bell(), x); };
  const ObservablePair w = werner_bipartite_pair(0.0);
  const double s = threshold_scan(family, w.a, w.b).x_critical;
  const double p = ppt_threshold_scan(family).x_critical;
  out.detail << "srpt " << s << ", ppt " << p;
  out.require(std::abs(s - 0.5) <= 1e-6, "srpt threshold");
  out.require(std::abs(p - 1.0 / 3.0) <= 1e-6, "ppt threshold");
}

void werner_multipartite(Outcome& out) {
  for (std::size_t n : {3, 4, 5}) {
    const auto family = [n](double x) { return werner_ghz(n, x); };
    const ObservablePair w = werner_multipartite_pair(n);
    const double s = threshold_scan(family, w.a, w.b).x_critical;
    const double p = ppt_threshold_scan(family).x_critical;
    const double s_exp = 1.0 / (1.0 + std::pow(2.0, double(n) - 2));
    const double p_exp = 1.0 / (1.0 + std::pow(2.0, double(n) - 1));
    out.detail << "N=" << n << " srpt " << s << " ppt " << p << "; ";
    out.require(std::abs(s - s_exp) <= 1e-6, "srpt N=" + std::to_string(n));
    out.require(std::abs(p - p_exp) <= 1e-6, "ppt N=" + std::to_string(n));
  }
}

void schmidt_pairs(Outcome& out) {
  oracle::Rng rng(1001);
  double worst_lhs = 0.0, worst_rhs = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d1 = 2 + rng.index(3), d2 = 2 + rng.index(3);
    const std::size_t rank = std::min(d1, d2);
    oracle::Vec c(rank);
    for (std::size_t i = 0; i < rank; ++i) c(i) = oracle::C(rng.normal(), rng.normal());
    c /= c.norm();
    std::vector<Complex> coeffs(c.data(), c.data() + rank);
    const StateVector psi = schmidt_state(coeffs, d1, d2);
    // Two largest Schmidt levels.
    std::size_t i0 = 0, i1 = 1;
    if (std::abs(c(i1)) > std::abs(c(i0))) std::swap(i0, i1);
    for (std::size_t i = 2; i < rank; ++i) {
      if (std::abs(c(i)) > std::abs(c(i0))) {
        i1 = i0;
        i0 = i;
      } else if (std::abs(c(i)) > std::abs(c(i1))) {
        i1 = i;
      }
    }
    const ObservablePair w = prop1_pair(psi.space(), std::min(i0, i1), std::max(i0, i1));
    const UncertaintyReport r = srpt_evaluate(psi, w.a, w.b);
    const double expected = std::norm(c(i0)) * std::norm(c(i1));
    worst_lhs = std::max(worst_lhs, std::abs(r.lhs));
    worst_rhs = std::max(worst_rhs, std::abs(r.rhs - expected));
  }
  out.detail << "max |lhs| " << worst_lhs << ", max |rhs - expected| " << worst_rhs;
  out.require(worst_lhs <= 1e-12, "lhs");
  out.require(worst_rhs <= 1e-10, "rhs");
}

void separable_soundness(Outcome& out) {
  oracle::Rng rng(1002);
  const std::vector<oracle::Dims> spaces{{2, 2}, {2, 3}, {2, 2, 2}};
  double worst = -1e300;
  int count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const oracle::Dims& dims = spaces[trial % 3];
    const HilbertSpace space(dims);
    const DensityMatrix rho(space, random_separable_oracle(rng, dims));
    const std::size_t rest = oracle::total(dims) / dims[0];
    const auto witness = [&]() -> Observable {
      if (rng.uniform() < 0.5) return Observable(space, random_product_operator(rng, dims));
      if (dims == oracle::Dims{2, 2}) return prop2_observable(random_prop2(rng));
      return Observable(space, oracle::admissible_family(rng, dims[0], rest));
    };
    const Observable a = witness(), b = witness();
    const UncertaintyReport r = srpt_evaluate(rho, a, b);
    worst = std::max(worst, r.slack);
    ++count;
  }
  out.detail << count << " states, max slack " << worst;
  out.require(worst <= 1e-9, "slack");
}

void counterexample(Outcome& out) {
  const HilbertSpace space{2, 2};
  const StateVector zero = StateVector::basis(space, {0, 0});
  const Observable a(space, kron({pauli_x(), pauli_x()}));
  const Observable b(space, kron({pauli_x(), pauli_y()}) + kron({pauli_y(), pauli_x()}));
  const UncertaintyReport r = srpt_evaluate(zero, a, b, 0, AdmissibilityCheck::skip_unsound);
  const double residual = is_admissible(b).residual;
  out.detail << "unchecked slack " << r.slack << ", residual(B) " << residual;
  out.require(r.violated, "unchecked violation");
  out.require(residual > 0.1, "residual");
}

void two_qubit_family(Outcome& out) {
  oracle::Rng rng(1006);
  int disagreements = 0, representable = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Matrix m;
    switch (trial % 3) {
      case 0:  // generic
        m = rng.hermitian(4);
        break;
      case 1:  // inside the family
        m = prop2_observable(random_prop2(rng)).matrix();
        break;
      default: {  // rank-2 correlation block with local terms: just outside the family
        const Prop2Params p = random_prop2(rng), q = random_prop2(rng);
        m = prop2_observable(p).matrix() +
            oracle::kron(oracle::pauli_dot(q.a), oracle::pauli_dot(q.b));
        break;
      }
    }
    const Observable obs(HilbertSpace{2, 2}, m);
    const bool adm = is_admissible(obs).admissible;
    const bool rep = std::holds_alternative<Prop2Params>(prop2_check(obs));
    representable += rep;
    disagreements += adm != rep;
  }
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    worst = std::max(worst, is_admissible(prop2_observable(random_prop2(rng))).residual);
  }
  out.detail << disagreements << " disagreements (" << representable
             << " representable of 500), max family residual " << worst;
  out.require(disagreements == 0, "agreement");
  out.require(worst <= 1e-12, "family residual");
}

void three_qubit(Outcome& out) {
  oracle::Rng rng(1007);
  double worst_lhs = 0.0, worst_rhs = 0.0, worst_bisep = -1e300, worst_product = -1e300;
  const ObservablePair triples[3] = {prop3_triple(1), prop3_triple(2), prop3_triple(3)};
  for (int trial = 0; trial < 100; ++trial) {
    double l[5];
    for (double& x : l) x = rng.uniform(0.0, 1.0);
    const double phase = rng.uniform(0.0, 2 * M_PI);
    double norm = 0.0;
    for (double x : l) norm += x * x;
    const StateVector psi = acin_state(l[0], l[1], l[2], l[3], l[4], phase);
    for (int k = 0; k < 3; ++k) {
      const UncertaintyReport r = srpt_evaluate(psi, triples[k].a, triples[k].b);
      const double expected = l[0] * l[0] * l[k + 2] * l[k + 2] / (norm * norm);
      worst_lhs = std::max(worst_lhs, std::abs(r.lhs));
      worst_rhs = std::max(worst_rhs, std::abs(r.rhs - expected));
    }
    const StateVector bisep = acin_state(0.0, l[1], l[2], l[3], l[4], phase);
    const StateVector product = acin_state(l[0] + 0.01, l[1], 0.0, 0.0, 0.0, phase);
    for (const auto& t : triples) {
      worst_bisep = std::max(worst_bisep, srpt_evaluate(bisep, t.a, t.b).slack);
      worst_product = std::max(worst_product, srpt_evaluate(product, t.a, t.b).slack);
    }
  }
  out.detail << "max |lhs| " << worst_lhs << ", max |rhs - expected| " << worst_rhs
             << ", max slack biseparable " << worst_bisep << ", product " << worst_product;
  out.require(worst_lhs <= 1e-12, "lhs");
  out.require(worst_rhs <= 1e-10, "rhs");
  out.require(worst_bisep <= 1e-9, "biseparable family");
  out.require(worst_product <= 1e-9, "product family");
}

void ghz_pairs(Outcome& out) {
  oracle::Rng rng(1008);
  const std::size_t pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  const HilbertSpace space{2, 2, 2};
  double worst = -1e300;
  for (int trial = 0; trial < 200; ++trial) {
    // U1 U2 U3 (cos t |000> + e^{i f} sin t |111>).
    const double t = rng.uniform(0.0, M_PI / 2), f = rng.uniform(0.0, 2 * M_PI);
    oracle::Vec g = oracle::Vec::Zero(8);
    g(0) = std::cos(t);
    g(7) = std::polar(std::sin(t), f);
    const oracle::Mat u = oracle::kron(oracle::kron(rng.unitary(2), rng.unitary(2)), rng.unitary(2));
    const StateVector psi(space, u * g);

    // A and B each act on a randomly chosen pair; the transposed qubit is random too.
    const auto& pa = pairs[rng.index(3)];
    const auto& pb = pairs[rng.index(3)];
    const std::size_t k = rng.index(3);
    const Observable a(space, embed_pair(prop2_observable(random_prop2(rng)).matrix(), pa[0], pa[1], 3));
    const Observable b(space, embed_pair(prop2_observable(random_prop2(rng)).matrix(), pb[0], pb[1], 3));
    worst = std::max(worst, srpt_evaluate(psi, a, b, k).slack);
  }
  out.detail << "max slack " << worst;
  out.require(worst <= 1e-9, "slack");
}

void oscillators(Outcome& out) {
  double min_rhs = 1e300;
  int failures = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const ObservablePair w = oscillator2d_pair(n);
    for (const auto& e : oscillator2d_eigenstates(n)) {
      const UncertaintyReport r = srpt_evaluate(e.vector, w.a, w.b);
      const double expected =
          std::norm(e.vector.amplitude({0, n})) * std::norm(e.vector.amplitude({n, 0}));
      min_rhs = std::min(min_rhs, r.rhs);
      if (!r.violated || std::abs(r.rhs - expected) > 1e-10 || r.rhs <= 1e-6) ++failures;
    }
  }
  const ObservablePair w1 = oscillator2d_pair(1);
  const bool vacuum_2d = srpt_evaluate(oscillator2d_eigenstates(0).front().vector, w1.a, w1.b).violated;

  int violated_3d = 0, total_3d = 0;
  bool product_detected = false;
  for (const auto& e : oscillator3d_eigenstates(1)) {
    if (e.m == 0) {
      for (int m : {-1, 1}) {
        const ObservablePair w = oscillator3d_pair(1, m);
        product_detected = product_detected || srpt_evaluate(e.vector, w.a, w.b).violated;
      }
      continue;
    }
    const ObservablePair w = oscillator3d_pair(1, e.m);
    ++total_3d;
    violated_3d += srpt_evaluate(e.vector, w.a, w.b).violated;
  }
  for (const auto& e : oscillator3d_eigenstates(2)) {
    const ObservablePair w = oscillator3d_pair(2, e.m);
    ++total_3d;
    violated_3d += srpt_evaluate(e.vector, w.a, w.b).violated;
  }
  out.detail << "2D min rhs " << min_rhs << ", 2D failures " << failures << ", 3D violated "
             << violated_3d << "/" << total_3d;
  out.require(failures == 0, "2D eigenstates");
  out.require(!vacuum_2d, "2D vacuum");
  out.require(violated_3d == total_3d, "3D eigenstates");
  out.require(!product_detected, "3D product state");
}

void cat_state_case(Outcome& out) {
  const double alpha = 1.0, beta = 1.0;
  const double a1 = -beta, a2 = beta, b1 = alpha, b2 = -alpha;
  const auto evaluate = [&](std::size_t trunc) {
    const StateVector psi = cat_state(alpha, beta, trunc);
    const ObservablePair w = cat_quadratures(a1, a2, b1, b2, trunc);
    const UncertaintyReport r = srpt_evaluate(psi, w.a, w.b);
    return std::tuple{r, variance(psi, partial_transpose(w.a)), variance(psi, partial_transpose(w.b))};
  };
  const auto [r32, va, vb] = evaluate(32);
  const auto [r24, va24, vb24] = evaluate(24);
  const double s = alpha * alpha + beta * beta;
  const double n2 = 2.0 + 2.0 * std::exp(-2.0 * s);
  const double va_exp = a1 * a1 + b1 * b1 + 8.0 * std::pow(a1 * alpha + b1 * beta, 2) / n2;
  const double vb_exp = a2 * a2 + b2 * b2 - 4.0 * std::pow(a2 * alpha - b2 * beta, 2) / (1.0 + std::exp(2.0 * s));
  const double comm_exp = std::pow(a1 * a2 + b1 * b2, 2);
  const double change = std::max({std::abs(r32.lhs - r24.lhs), std::abs(r32.rhs - r24.rhs),
                                  std::abs(va - va24), std::abs(vb - vb24)});

  int duan_violations = 0;
  double duan_margin = 1e300;
  const StateVector psi = cat_state(alpha, beta, 32);
  for (int k = 0; k <= 80; ++k) {
    const double a = 0.25 * std::pow(16.0, k / 80.0);
    const DuanReport d = duan_criterion(psi, a);
    duan_violations += d.violated;
    duan_margin = std::min(duan_margin, d.lhs_sum - d.bound);
  }
  out.detail << "slack " << r32.slack << ", var A " << va << " vs " << va_exp << ", var B " << vb
             << " vs " << vb_exp << ", comm " << r32.comm_term << " vs " << comm_exp
             << ", 24->32 change " << change << ", Duan min margin " << duan_margin;
  out.require(r32.violated, "violation");
  out.require(std::abs(va - va_exp) <= 1e-6, "var A");
  out.require(std::abs(vb - vb_exp) <= 1e-6, "var B");
  out.require(std::abs(r32.comm_term - comm_exp) <= 1e-6, "commutator term");
  out.require(change < 1e-6, "truncation convergence");
  out.require(duan_violations == 0, "Duan");
}

void multiphoton_case(Outcome& out) {
  oracle::Rng rng(1011);
  const ObservablePair w = multiphoton_pair();
  double worst_lhs = 0.0, worst_anti = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Complex a(rng.normal(), rng.normal()), b(rng.normal(), rng.normal()),
        g(rng.normal(), rng.normal());
    const double norm2 = std::norm(a) + std::norm(b) + std::norm(g);
    const double re = (std::conj(a) * g).real() / norm2;
    const UncertaintyReport r = srpt_evaluate(multiphoton_state(a, b, g), w.a, w.b);
    worst_lhs = std::max(worst_lhs, std::abs(r.lhs));
    worst_anti = std::max(worst_anti, std::abs(r.anticomm_term - re * re));
  }
  const Matrix anti = partial_transpose(anticommutator(w.a, w.b)).matrix();
  oracle::Mat plus = oracle::Mat::Zero(9, 1), minus = oracle::Mat::Zero(9, 1);
  plus(2) = minus(2) = plus(6) = 1 / std::sqrt(2.0);
  minus(6) = -1 / std::sqrt(2.0);
  const double proj = (anti - (plus * plus.adjoint() - minus * minus.adjoint())).cwiseAbs().maxCoeff();
  out.detail << "max |lhs| " << worst_lhs << ", max anticomm error " << worst_anti
             << ", projector deviation " << proj;
  out.require(worst_lhs <= 1e-10, "lhs");
  out.require(worst_anti <= 1e-10, "anticommutator term");
  out.require(proj <= 1e-12, "projector difference");
}

void werner_formula(Outcome& out) {
  const double h = 1.0 / std::sqrt(2.0);
  const WernerPhiReport r = werner_phi_threshold(h, h, 0.0);
  out.detail << "numeric " << r.numeric.x_critical << ", printed formula " << r.linear_formula
             << (r.linear_agrees ? " (agrees)" : " (disagrees)") << ", squared reading "
             << r.squared_formula << (r.squared_agrees ? " (agrees)" : " (disagrees)");
  out.require(std::abs(r.numeric.x_critical - 0.5) <= 1e-6, "threshold");
  out.require(std::abs(r.linear_formula - 0.390388) <= 1e-5, "printed formula value");
  out.require(!r.linear_agrees, "printed formula flagged");
  out.require(r.squared_agrees, "squared reading");
}

void uncertainty_soundness(Outcome& out) {
  oracle::Rng rng(1013);
  const std::vector<oracle::Dims> spaces{{2, 2}, {2, 3}, {3, 3}, {2, 2, 2}};
  double worst = -1e300;
  int heisenberg_failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const oracle::Dims& dims = spaces[trial % spaces.size()];
    const HilbertSpace space(dims);
    const std::size_t n = space.total_dim();
    const Observable a(space, rng.hermitian(n)), b(space, rng.hermitian(n));
    UncertaintyReport r;
    if (trial % 2 == 0) {
      r = sr_uncertainty(StateVector(space, rng.unit_vector(n)), a, b);
    } else {
      Matrix rho = Matrix::Zero(n, n);
      for (int t = 0; t < 3; ++t) {
        const oracle::Vec v = rng.unit_vector(n);
        rho += rng.uniform(0.05, 1.0) * v * v.adjoint();
      }
      rho /= rho.trace().real();
      r = sr_uncertainty(DensityMatrix(space, 0.5 * (rho + rho.adjoint())), a, b);
    }
    worst = std::max(worst, r.slack);
    heisenberg_failures += r.heisenberg_rhs() > r.rhs;
  }
  out.detail << "max slack " << worst << ", Heisenberg above full rhs " << heisenberg_failures;
  out.require(worst <= 1e-9, "slack");
  out.require(heisenberg_failures == 0, "Heisenberg ordering");
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "bipartite Werner thresholds", 1.0, werner_bipartite},
      {2, "multipartite Werner thresholds", 5.0, werner_multipartite},
      {3, "Schmidt-pair witness on random Schmidt states", 0.0, schmidt_pairs},
      {4, "no detection of separable states", 0.0, separable_soundness},
      {5, "inadmissible counterexample", 0.0, counterexample},
      {6, "two-qubit admissible family", 0.0, two_qubit_family},
      {7, "three-qubit triples", 0.0, three_qubit},
      {8, "GHZ states escape two-qubit witnesses", 0.0, ghz_pairs},
      {9, "oscillator eigenstates", 5.0, oscillators},
      {10, "two-mode cat state", 10.0, cat_state_case},
      {11, "two-photon polarization state", 0.0, multiphoton_case},
      {12, "Werner threshold formula audit", 0.0, werner_formula},
      {13, "untransposed relation soundness", 0.0, uncertainty_soundness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0) {
      out.require(seconds < c.time_limit, "time limit " + std::to_string(c.time_limit) + " s");
    }
    failed += !out.pass;
    std::printf("%s  %2d  %s  [%.2f s]  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title.c_str(),
                seconds, out.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
