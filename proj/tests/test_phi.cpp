#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "zetashift/phi.hpp"

using namespace zetashift;

namespace {
const double kE = std::exp(1.0);

PhiFunction exp_tau() { return PhiFunction::exp_poly(kE, {0.0, 1.0}); }          // e^tau
PhiFunction exp_tau_sq() { return PhiFunction::exp_poly(kE, {0.0, 0.0, 1.0}); }  // e^{tau^2}
PhiFunction tau_sq() { return PhiFunction::polynomial({0.0, 0.0, 1.0}); }        // tau^2
PhiFunction tau_cube() { return PhiFunction::polynomial({0.0, 0.0, 0.0, 1.0}); } // tau^3
PhiFunction gentle_double_exp() {
  return PhiFunction::double_exp(kE, kE, {0.0, 0.02});  // e^{e^{tau/50}}
}
}  // namespace

TEST_CASE("psi closed forms") {
  CHECK(psi_of(exp_tau(), 7.0) == doctest::Approx(1.0));
  CHECK(psi_of(exp_tau(), 123.0) == doctest::Approx(1.0));
  CHECK(psi_of(exp_tau_sq(), 10.0) == doctest::Approx(20.0));
  CHECK(psi_of(tau_cube(), 6.0) == doctest::Approx(0.5));  // 3/tau
  CHECK(psi_of(tau_sq(), 8.0) == doctest::Approx(0.25));   // 2/tau
  CHECK_THROWS_AS(psi_of(exp_tau(), -1.0), validation_error);
}

TEST_CASE("phi values per family") {
  CHECK(tau_sq().value(5.0) == doctest::Approx(25.0));
  PhiFunction two_pow = PhiFunction::exp_poly(2.0, {0.0, 1.0});
  CHECK(two_pow.value(3.0) == doctest::Approx(8.0));
  CHECK(gentle_double_exp().value(50.0) == doctest::Approx(std::exp(kE)));
  CHECK_THROWS_AS(PhiFunction::polynomial({1.0}), validation_error);
  CHECK_THROWS_AS(PhiFunction::polynomial({0.0, -1.0}), validation_error);
  CHECK_THROWS_AS(PhiFunction::exp_poly(0.9, {0.0, 1.0}), validation_error);
  // positivity range of a polynomial shift
  CHECK_THROWS_AS(PhiFunction::polynomial({-100.0, 1.0}).value(5.0), numeric_range_error);
}

TEST_CASE("identity detection") {
  CHECK(PhiFunction::polynomial({0.0, 1.0}).is_identity());
  CHECK_FALSE(PhiFunction::polynomial({0.0, 2.0}).is_identity());
  CHECK_FALSE(PhiFunction::polynomial({1.0, 1.0}).is_identity());
  CHECK_FALSE(exp_tau().is_identity());
}

TEST_CASE("axioms for the pure exponential") {
  AxiomReport rep = check_axioms(exp_tau(), 10.0, 200);
  CHECK(rep.axiom_i_ok);
  CHECK(rep.axiom_i_constant == doctest::Approx(kE).epsilon(1e-9));
  CHECK(rep.axiom_ii_case == AxiomReport::Case::increasing_bounded_step);
  CHECK(rep.axiom_ii_ok);
  CHECK(rep.observed_psi_step == doctest::Approx(0.0));
  CHECK(rep.axiom_ii_constant == doctest::Approx(1.0));  // A = 1/min psi
}

TEST_CASE("axioms for the quadratic polynomial") {
  AxiomReport rep = check_axioms(tau_sq(), 10.0, 200);
  CHECK(rep.axiom_i_ok);
  CHECK(rep.axiom_ii_case == AxiomReport::Case::decreasing_lower_bounded);
  CHECK(rep.axiom_ii_ok);
  CHECK(rep.axiom_ii_constant == doctest::Approx(2.0).epsilon(1e-9));  // B: psi = 2/tau
}

TEST_CASE("axioms for the squared-exponent family") {
  AxiomReport rep = check_axioms(exp_tau_sq(), 5.0, 200);
  CHECK(rep.axiom_i_ok);
  CHECK(rep.axiom_ii_case == AxiomReport::Case::increasing_bounded_step);
  CHECK(rep.axiom_ii_ok);
  // step psi(tau + 1/(2 tau)) - psi(tau) = 1/tau, at most 1/T
  CHECK(rep.observed_psi_step == doctest::Approx(1.0 / 5.0).epsilon(1e-6));
  CHECK(rep.observed_psi_step <= 1.0);
  // ratio phi'(tau+1/psi)/phi'(tau) = (1 + 1/(2 tau^2)) e^{1 + 1/(4 tau^2)}
  CHECK(rep.axiom_i_constant > kE);
  CHECK(rep.axiom_i_constant < 3.2);
  CHECK_THROWS_AS(check_axioms(exp_tau(), 2.0, 200), validation_error);
  CHECK_THROWS_AS(check_axioms(exp_tau(), 10.0, 50), validation_error);
}

TEST_CASE("growth inequality across built-in families") {
  CHECK(growth_check(exp_tau(), 10.0, 1.0).min_ratio == doctest::Approx(kE).epsilon(1e-9));
  CHECK(growth_check(tau_sq(), 10.0, 2.0).min_ratio == doctest::Approx(4.0).epsilon(1e-9));

  const PhiFunction fams[] = {exp_tau(), exp_tau_sq(), tau_sq(), tau_cube(), gentle_double_exp()};
  for (const auto& phi : fams)
    for (double C : {1.0, 2.0, 5.0})
      for (double T : {10.0, 100.0}) {
        GrowthReport rep = growth_check(phi, T, C);
        CAPTURE(C);
        CAPTURE(T);
        CHECK(rep.ok);
        CHECK(rep.min_log_ratio >= std::log(C + 1.0) - 1e-12);
      }
}

TEST_CASE("partition of [T, 2T] for unit psi") {
  PartitionResult part = build_partition(exp_tau(), 10.0);
  CHECK(part.K == 10);
  REQUIRE(part.points.size() == 11);
  for (std::size_t k = 0; k < part.points.size(); ++k)
    CHECK(part.points[k] == doctest::Approx(10.0 + static_cast<double>(k)));
  CHECK(part.endpoint_check == doctest::Approx(0.0));
  CHECK(std::abs(part.sum_check - part.endpoint_check) < 1e-12);
}

TEST_CASE("partition density follows the continuum estimate") {
  PartitionResult part = build_partition(exp_tau_sq(), 10.0);
  // ~ int_10^20 2 tau dtau = 300 steps
  CHECK(part.K >= 298);
  CHECK(part.K <= 302);
  CHECK(std::abs(part.sum_check - part.endpoint_check) < 1e-12);
  double last_psi = psi_of(exp_tau_sq(), part.points[part.K - 1]);
  CHECK(std::abs(part.endpoint_check) <= 1.0 / last_psi + 1e-12);

  // induction bound psi(T_k) <= psi(T) + kA with the observed A
  AxiomReport rep = check_axioms(exp_tau_sq(), 10.0, 200);
  double psi_T = psi_of(exp_tau_sq(), 10.0);
  for (std::size_t k = 0; k < part.points.size(); ++k) {
    double lhs = psi_of(exp_tau_sq(), part.points[k]);
    CHECK(lhs <= psi_T + static_cast<double>(k) * rep.axiom_ii_constant + 1e-9);
    CHECK(lhs >= 1.0 / rep.axiom_ii_constant - 1e-9);
  }

  CHECK_THROWS_AS(build_partition(tau_sq(), 10.0), validation_error);
}

TEST_CASE("identity shift reduces to the interval scan sample for sample") {
  DiskDomain disk{0.75, 0.0, 0.05};
  Target one = Target::constant({1.0, 0.0});
  const double T = 100.0, step = 0.1;
  ScanRun shifted = scan_shifted(PhiFunction::polynomial({0.0, 1.0}), disk, one, T, step, 0.6, 24);
  ScanRun plain = scan_interval(disk, one, {T, T, step}, 0.6, 24);
  REQUIRE(shifted.distances.size() == plain.distances.size());
  for (std::size_t k = 0; k < plain.distances.size(); ++k) {
    CHECK(shifted.distances[k] == plain.distances[k]);
    CHECK(shifted.taus[k] == plain.taus[k]);
    CHECK(shifted.shifts[k] == plain.shifts[k]);
  }
  CHECK(shifted.result.density == plain.result.density);
  CHECK(shifted.result.best_tau == plain.result.best_tau);
}

TEST_CASE("exponential shift scan at desk scale") {
  DiskDomain disk{0.75, 0.0, 0.05};
  Target one = Target::constant({1.0, 0.0});
  ScanRun run = scan_shifted(exp_tau(), disk, one, 3.0, 0.01, 10.0, 24);
  CHECK(run.result.samples == 301);
  CHECK(run.result.density >= 0.0);
  CHECK(run.result.density <= 1.0);
  CHECK(run.shifts.front() == doctest::Approx(std::exp(3.0)));
  CHECK(run.shifts.back() == doctest::Approx(std::exp(6.0)));
  // spot check one direct-engine sample against the pointwise evaluator
  std::size_t k = 150;
  double point = sup_distance(run.shifts[k], disk, one, 24);
  CHECK(std::abs(run.distances[k] - point) < 1e-9);
  // an epsilon beyond the global max accepts everything
  ScanRun all = scan_shifted(exp_tau(), disk, one, 3.0, 0.01, 1e9, 24);
  CHECK(all.result.density == 1.0);
}

TEST_CASE("shift overflow of the evaluation range is rejected") {
  DiskDomain disk{0.75, 0.0, 0.05};
  Target one = Target::constant({1.0, 0.0});
  CHECK_THROWS_AS(scan_shifted(exp_tau(), disk, one, 8.0, 0.01, 0.5, 24), numeric_range_error);
}
