#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracle_helpers.hpp"
#include "zetashift/decomposition.hpp"

using namespace zetashift;
using cdbl = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("perron remainder obeys the triangle-inequality bound") {
  const cdbl s{0.8, 120.0};
  const double H = 30.0, sigma0 = 0.55, T = 120.0;
  cdbl r = perron_remainder(s, H, sigma0, T);

  // coarse direct bound: (1/2pi) int |Gamma| * max |zeta| over the window
  const double L = std::log(T);
  double gamma_l1 = 0.0;
  const double h = 1e-3;
  for (double tau = -L; tau <= L; tau += h)
    gamma_l1 += h * std::abs(complex_gamma({sigma0 - s.real(), tau}));
  auto zs = zeta_on_grid(sigma0, s.imag() - L, 0.01,
                         static_cast<std::size_t>(2 * L / 0.01) + 1);
  double zmax = 0.0;
  for (auto z : zs) zmax = std::max(zmax, std::abs(z));
  CHECK(std::abs(r) <= gamma_l1 * zmax / (2.0 * kPi) * 1.001);
}

TEST_CASE("perron remainder is self-consistent under step halving") {
  const cdbl s{0.75, 200.0};
  EvalConfig coarse, fine;
  fine.quad_step = 0.01;
  cdbl a = perron_remainder(s, 50.0, 0.5, 200.0, coarse);
  cdbl b = perron_remainder(s, 50.0, 0.5, 200.0, fine);
  CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)));
}

TEST_CASE("degenerate window matches a fine trapezoid oracle") {
  const cdbl s{0.8, 60.0};
  const double H = 15.0, sigma0 = 0.5, T = 3.0;
  cdbl fast = perron_remainder(s, H, sigma0, T);

  const double L = std::log(T);
  const double h = 1e-4;
  const std::size_t n = static_cast<std::size_t>(std::round(2 * L / h));
  auto zs = zeta_on_grid(sigma0, s.imag() - L, h, n + 1);
  cdbl acc = 0.0;
  const double log_h_base = std::log(H);
  for (std::size_t k = 0; k <= n; ++k) {
    double tau = -L + h * static_cast<double>(k);
    cdbl g = complex_gamma({sigma0 - s.real(), tau});
    cdbl hp(std::cos(tau * log_h_base), std::sin(tau * log_h_base));
    cdbl val = g * zs[k] * hp;
    acc += (k == 0 || k == n) ? 0.5 * val : val;
  }
  cdbl slow = acc * h / (2.0 * kPi);
  CHECK(std::abs(fast - slow) <= 1e-6 * std::max(1.0, std::abs(slow)));
}

TEST_CASE("decomposition identity at the reference configuration") {
  DecompositionReport rep = decomposition_check({0.75, 100.0}, 20.0, 0.5, 100.0);
  CHECK(rep.residual < 1e-6);
  CHECK(rep.residual == doctest::Approx(std::abs(rep.lhs - rep.rhs)));
  CHECK(std::abs(rep.lhs) > 0.0);
}

TEST_CASE("decomposition terms vanish in the large-H limit") {
  DecompositionReport rep = decomposition_check({0.9, 50.0}, 1e6, 0.5, 50.0);
  double scale = std::abs(rep.lhs);
  CHECK(std::abs(rep.zeta_h - rep.lhs) / scale < 1e-2);
  CHECK(std::abs(rep.residue_term) / scale < 1e-10);
  CHECK(std::abs(rep.perron_integral) / scale < 1e-2);
  CHECK(rep.residual < 1e-6);
}

TEST_CASE("residue term matches the reference gamma where representable") {
  const std::complex<double> s{0.8, 2.0};
  const double H = 12.0;
  DecompositionReport rep = decomposition_check(s, H, 0.5, 50.0);
  oracle::cld one_minus_s{0.2L, -2.0L};
  oracle::cld ref = oracle::gamma_reference(one_minus_s) *
                    std::exp(one_minus_s * std::log(static_cast<long double>(H)));
  cdbl ref_d{static_cast<double>(ref.real()), static_cast<double>(ref.imag())};
  CHECK(std::abs(rep.residue_term - ref_d) < 1e-9 * std::abs(ref_d));
  CHECK(rep.residual < 1e-6);
}

TEST_CASE("randomized decomposition suite, recorded seed") {
  std::mt19937_64 rng(20230811u);
  for (int i = 0; i < 10; ++i) {
    double sigma = oracle::uniform(rng, 0.6, 0.9);
    double t = oracle::uniform(rng, 50.0, 500.0);
    double H = oracle::uniform(rng, 10.0, 100.0);
    CAPTURE(sigma);
    CAPTURE(t);
    CAPTURE(H);
    DecompositionReport rep = decomposition_check({sigma, t}, H, 0.5, t, {}, 2);
    CHECK(rep.residual < 1e-6);
  }
}

TEST_CASE("precondition violations") {
  CHECK_THROWS_AS(perron_remainder({0.6, 100.0}, 10.0, 0.7, 100.0), validation_error);
  CHECK_THROWS_AS(perron_remainder({0.6, 100.0}, 10.0, 0.6, 100.0), validation_error);
  CHECK_THROWS_AS(perron_remainder({0.6, 100.0}, 0.5, 0.5, 100.0), validation_error);
  CHECK_THROWS_AS(perron_remainder({0.6, 100.0}, 10.0, 0.5, 2.0), validation_error);
  CHECK_THROWS_AS(decomposition_check({0.6, 0.5}, 10.0, 0.5, 100.0), validation_error);
}
