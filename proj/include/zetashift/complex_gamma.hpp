#pragma once

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "zetashift/errors.hpp"

namespace zetashift {

namespace detail {

// Lanczos g = 7, 9 terms. Relative error of the rational part is ~1e-13 on
// Re z >= 1/2.
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// log(sin(pi z)) up to a multiple of 2*pi*i; stable for large |Im z| where
// sin(pi z) itself overflows.
inline std::complex<double> log_sin_pi(std::complex<double> z) {
  const double pi = 3.14159265358979323846;
  if (std::abs(z.imag()) < 1.0) return std::log(std::sin(pi * z));
  if (z.imag() > 0) {
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 i pi z}), |e^{2 i pi z}| small
    std::complex<double> i(0.0, 1.0);
    return std::log(i / 2.0) - i * pi * z + std::log(1.0 - std::exp(2.0 * i * pi * z));
  }
  return std::conj(log_sin_pi(std::conj(z)));
}

}  // namespace detail

inline bool is_gamma_pole(std::complex<double> z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

// log Gamma(z), possibly offset by a multiple of 2*pi*i on the reflected
// half-plane; exp() of it is Gamma(z) everywhere away from the poles.
inline std::complex<double> complex_log_gamma(std::complex<double> z) {
  if (is_gamma_pole(z)) throw numeric_range_error("gamma: pole at non-positive integer");
  const double pi = 3.14159265358979323846;
  if (z.real() < 0.5)
    return std::log(pi) - detail::log_sin_pi(z) - complex_log_gamma(1.0 - z);
  std::complex<double> a(detail::kLanczosCoeff[0], 0.0);
  for (int k = 1; k < 9; ++k) a += detail::kLanczosCoeff[k] / (z - 1.0 + static_cast<double>(k));
  std::complex<double> t = z + (detail::kLanczosG - 0.5);
  return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(a);
}

// Gamma(z) by exponentiating the Lanczos log form. Underflows gracefully to 0
// when |Gamma| drops below the smallest double (|Im z| beyond ~470 on the
// strip), which is the honest binary64 answer there.
inline std::complex<double> complex_gamma(std::complex<double> z) {
  return std::exp(complex_log_gamma(z));
}

// Empirical implied constant of the Stirling-type bound
// |Gamma(x+it)| <= C e^{-|t|} (x+|t|)^{-1}: the max of
// |Gamma(x+it)| e^{|t|} (x+|t|) over the grid.
inline double stirling_check(const std::vector<double>& x_grid, const std::vector<double>& t_grid) {
  if (x_grid.empty() || t_grid.empty()) throw validation_error("stirling_check: empty grid");
  double worst = 0.0;
  for (double x : x_grid) {
    if (!(x > 0.0 && x <= 1.0)) throw validation_error("stirling_check: x must lie in (0,1]");
    for (double t : t_grid) {
      if (!(std::abs(t) >= 1.0 && std::abs(t) <= 1000.0))
        throw validation_error("stirling_check: need 1 <= |t| <= 1000");
      double magnitude = std::abs(complex_gamma({x, t}));
      double scaled = magnitude * std::exp(std::abs(t)) * (x + std::abs(t));
      if (scaled > worst) worst = scaled;
    }
  }
  return worst;
}

// x in {0.1,...,1.0}, t in {1,...,50}: the grid the regression suite pins.
inline std::pair<std::vector<double>, std::vector<double>> default_stirling_grid() {
  std::vector<double> xs, ts;
  for (int i = 1; i <= 10; ++i) xs.push_back(0.1 * i);
  for (int t = 1; t <= 50; ++t) ts.push_back(static_cast<double>(t));
  return {xs, ts};
}

}  // namespace zetashift
