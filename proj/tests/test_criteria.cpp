#include <doctest.h>

#include <cmath>

#include "oracle.hpp"
#include "srpt/criteria.hpp"
#include "srpt/states.hpp"
#include "srpt/witnesses.hpp"

using namespace srpt;

namespace {

StateVector bell() { return schmidt_state({1.0, 1.0}, 2, 2); }

DensityMatrix random_mixed(oracle::Rng& rng, const HilbertSpace& space, int terms) {
  const std::size_t n = space.total_dim();
  Matrix rho = Matrix::Zero(n, n);
  for (int t = 0; t < terms; ++t) {
    const Vector v = rng.unit_vector(n);
    rho += rng.uniform(0.1, 1.0) * v * v.adjoint();
  }
  rho /= rho.trace().real();
  return DensityMatrix(space, 0.5 * (rho + rho.adjoint()));
}

}  // namespace

TEST_CASE("transposed evaluation matches the definition term by term") {
  oracle::Rng rng(21);
  for (const auto& dims : {oracle::Dims{2, 2}, oracle::Dims{2, 3}, oracle::Dims{3, 2}}) {
    const HilbertSpace space(dims);
    for (int trial = 0; trial < 10; ++trial) {
      const DensityMatrix rho = random_mixed(rng, space, 3);
      const Observable a(space, oracle::admissible_family(rng, dims[0], dims[1]));
      const Observable b(space, oracle::admissible_family(rng, dims[0], dims[1]));
      const UncertaintyReport r = srpt_evaluate(rho, a, b);
      const oracle::Terms t = oracle::uncertainty(rho.matrix(), a.matrix(), b.matrix(), dims, 0, true);
      CHECK(r.lhs == doctest::Approx(t.lhs).epsilon(1e-10));
      CHECK(r.comm_term == doctest::Approx(t.comm).epsilon(1e-10));
      CHECK(r.anticomm_term == doctest::Approx(t.anticomm).epsilon(1e-10));
      CHECK(r.slack == doctest::Approx(t.rhs - t.lhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("untransposed relation matches the definition and is never violated") {
  oracle::Rng rng(22);
  const oracle::Dims dims{2, 3};
  const HilbertSpace space(dims);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_mixed(rng, space, 1 + int(rng.index(3)));
    const Observable a(space, rng.hermitian(6)), b(space, rng.hermitian(6));
    const UncertaintyReport r = sr_uncertainty(rho, a, b);
    const oracle::Terms t = oracle::uncertainty(rho.matrix(), a.matrix(), b.matrix(), dims, 0, false);
    CHECK(r.lhs == doctest::Approx(t.lhs).epsilon(1e-10));
    CHECK(r.rhs == doctest::Approx(t.rhs).epsilon(1e-10));
    CHECK_FALSE(r.violated);
    CHECK(r.heisenberg_rhs() <= r.rhs);
  }
}

TEST_CASE("pure-state and density-matrix overloads agree") {
  oracle::Rng rng(23);
  const HilbertSpace space{2, 2};
  const StateVector psi(space, rng.unit_vector(4));
  const ObservablePair w = werner_bipartite_pair(0.3);
  const UncertaintyReport a = srpt_evaluate(psi, w.a, w.b);
  const UncertaintyReport b = srpt_evaluate(density_from_pure(psi), w.a, w.b);
  CHECK(a.lhs == doctest::Approx(b.lhs).epsilon(1e-12));
  CHECK(a.rhs == doctest::Approx(b.rhs).epsilon(1e-12));
  const UncertaintyReport c = sr_uncertainty(psi, w.a, w.b);
  const UncertaintyReport d = sr_uncertainty(density_from_pure(psi), w.a, w.b);
  CHECK(c.slack == doctest::Approx(d.slack).epsilon(1e-12));
}

TEST_CASE("Bell-state Werner mixture follows the hand-derived terms") {
  // lhs = (1 - x^2)^2, rhs = x^2 (1 + x)^2, crossing at x = 1/2.
  const ObservablePair w = werner_bipartite_pair(0.0);
  for (double x : {0.0, 0.2, 0.45, 0.5, 0.55, 0.8, 1.0}) {
    const UncertaintyReport r = srpt_evaluate(werner(bell(), x), w.a, w.b);
    CHECK(r.lhs == doctest::Approx(std::pow(1 - x * x, 2)).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(x * x * std::pow(1 + x, 2)).epsilon(1e-12));
    CHECK(r.comm_term == doctest::Approx(0.0));
    CHECK(r.violated == (x > 0.5 + 1e-9));
  }
}

TEST_CASE("product states are not detected") {
  const ObservablePair w = werner_bipartite_pair(0.0);
  const StateVector zero = StateVector::basis(HilbertSpace{2, 2}, {0, 0});
  CHECK_FALSE(srpt_evaluate(zero, w.a, w.b).violated);
  CHECK(srpt_evaluate(bell(), w.a, w.b).violated);
}

TEST_CASE("admissibility of simple observables") {
  const HilbertSpace space{2, 2};
  CHECK(is_admissible(Observable(space, kron({pauli_x(), pauli_y()}))).admissible);
  CHECK(is_admissible(Observable(space, kron({pauli_y(), pauli_z()}))).residual < 1e-14);
  const Observable bad(space, kron({pauli_x(), pauli_y()}) + kron({pauli_y(), pauli_x()}));
  const AdmissibilityReport r = is_admissible(bad);
  CHECK_FALSE(r.admissible);
  CHECK(r.residual > 0.1);
  // The same observable is inadmissible for either choice of subsystem.
  CHECK(is_admissible(bad, 1).residual == doctest::Approx(r.residual));
}

TEST_CASE("enforced evaluation refuses inadmissible observables") {
  const HilbertSpace space{2, 2};
  const Observable a(space, kron({pauli_x(), pauli_x()}));
  const Observable b(space, kron({pauli_x(), pauli_y()}) + kron({pauli_y(), pauli_x()}));
  const StateVector zero = StateVector::basis(space, {0, 0});
  CHECK_THROWS_AS(srpt_evaluate(zero, a, b), AdmissibilityError);
  try {
    (void)srpt_evaluate(zero, a, b);
  } catch (const AdmissibilityError& e) {
    CHECK(e.observable() == "B");
    CHECK(e.residual() > 0.1);
  }
  const UncertaintyReport r = srpt_evaluate(zero, a, b, 0, AdmissibilityCheck::skip_unsound);
  CHECK(r.violated);
}

TEST_CASE("mismatched spaces are rejected") {
  const ObservablePair w = werner_bipartite_pair(0.0);
  const StateVector psi = StateVector::basis(HilbertSpace{2, 3}, {0, 0});
  CHECK_THROWS_AS(srpt_evaluate(psi, w.a, w.b), DimensionMismatch);
  CHECK_THROWS_AS(sr_uncertainty(psi, w.a, w.b), DimensionMismatch);
}

TEST_CASE("PPT minimum eigenvalue of the Bell Werner mixture is (1 - 3x)/4") {
  for (double x : {0.0, 0.25, 1.0 / 3.0, 0.7, 1.0}) {
    CHECK(ppt_min_eigenvalue(werner(bell(), x)) == doctest::Approx((1 - 3 * x) / 4).epsilon(1e-12));
  }
}

TEST_CASE("Duan criterion: vacuum saturates, two-mode squeezing violates at negative a") {
  const std::size_t d = 40;
  const StateVector vacuum = StateVector::basis(HilbertSpace{d, d}, {0, 0});
  for (double a : {0.5, 1.0, 2.0, -1.5}) {
    const DuanReport r = duan_criterion(vacuum, a);
    CHECK(r.lhs_sum == doctest::Approx(a * a + 1 / (a * a)).epsilon(1e-12));
    CHECK_FALSE(r.violated);
  }

  // sum_n tanh(r)^n |n, n>: x1 - x2 and p1 + p2 are squeezed.
  const double r = 0.5;
  Vector amp = Vector::Zero(d * d);
  for (std::size_t n = 0; n < d; ++n) amp(n * d + n) = std::pow(std::tanh(r), double(n));
  const StateVector squeezed = StateVector::normalized(HilbertSpace{d, d}, amp);
  const DuanReport neg = duan_criterion(squeezed, -1.0);
  CHECK(neg.violated);
  CHECK(neg.lhs_sum == doctest::Approx(2 * std::exp(-2 * r)).epsilon(1e-8));
  const DuanReport pos = duan_criterion(squeezed, 1.0);
  CHECK_FALSE(pos.violated);
  CHECK(pos.lhs_sum == doctest::Approx(2 * std::exp(2 * r)).epsilon(1e-6));

  CHECK(duan_criterion(density_from_pure(vacuum), 2.0).lhs_sum ==
        doctest::Approx(duan_criterion(vacuum, 2.0).lhs_sum).epsilon(1e-12));
  CHECK_THROWS_AS(duan_criterion(vacuum, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(duan_criterion(StateVector::basis(HilbertSpace{2, 2, 2}, {0, 0, 0}), 1.0),
                  DimensionMismatch);
}

TEST_CASE("Duan pure-state path agrees with the operator path on a cat state") {
  const StateVector psi = cat_state(0.7, 0.4, 24);
  const DensityMatrix rho = density_from_pure(psi);
  for (double a : {0.3, 1.0, 3.0}) {
    CHECK(duan_criterion(psi, a).lhs_sum ==
          doctest::Approx(duan_criterion(rho, a).lhs_sum).epsilon(1e-10));
  }
}
