#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "zetashift/complex_gamma.hpp"
#include "zetashift/errors.hpp"
#include "zetashift/quadrature.hpp"
#include "zetashift/zeta.hpp"

namespace zetashift {

// Numerical verification of the smoothed-series decomposition
//   zeta(s) = zeta_H(s) - Gamma(1-s) H^{1-s}
//             - (1/2 pi i) int_{Re z = sigma0 - sigma} Gamma(z) zeta(s+z) H^z dz.
// The two subtracted terms are the residues picked up when the Perron contour
// for zeta_H moves from Re z = 2 onto the line Re z = sigma0 - sigma.
struct DecompositionReport {
  std::complex<double> s;
  double H = 0.0;
  double sigma0 = 0.0;
  std::complex<double> lhs;   // zeta(s)
  std::complex<double> rhs;   // reconstruction from the decomposition
  double residual = 0.0;      // |lhs - rhs|
  std::complex<double> zeta_h;
  std::complex<double> residue_term;     // Gamma(1-s) H^{1-s}
  std::complex<double> perron_integral;  // the full line-integral term
};

namespace detail {

inline void check_perron_args(std::complex<double> s, double H, double sigma0, double T) {
  if (!(sigma0 >= 0.5)) throw validation_error("perron: sigma0 must be >= 1/2");
  if (!(s.real() > sigma0))
    throw validation_error("perron: need sigma0 < sigma (Gamma argument hits its pole otherwise)");
  if (!(s.real() <= 1.0)) throw validation_error("perron: sigma must be <= 1");
  if (!(T >= 3.0)) throw validation_error("perron: T must be >= 3");
  if (!(H >= 1.0)) throw validation_error("perron: H must be >= 1");
}

// (1/2 pi) int_{-W}^{W} Gamma(sigma0-sigma+i tau) zeta(sigma0+i(t+tau)) H^{i tau + c} dtau,
// where c = 0 reproduces the +-log T remainder window and c = sigma0-sigma
// the full contour term.
inline RefinedIntegral<std::complex<double>> perron_line_integral(
    std::complex<double> s, double H, double sigma0, double half_width, double h_extra_exponent,
    const EvalConfig& cfg, double rel_tol, int threads) {
  const double sigma = s.real(), t = s.imag();
  const double log_h = std::log(H);
  const double h_amp = std::exp(h_extra_exponent * log_h);
  auto sampler = [&](double tau0, double dtau, std::size_t count) {
    std::vector<std::complex<double>> vals =
        zeta_on_grid(sigma0, t + tau0, dtau, count, cfg, threads);
    for (std::size_t k = 0; k < count; ++k) {
      const double tau = tau0 + dtau * static_cast<double>(k);
      const std::complex<double> gamma_factor =
          complex_gamma({sigma0 - sigma, tau});
      const std::complex<double> h_phase(std::cos(tau * log_h), std::sin(tau * log_h));
      vals[k] *= gamma_factor * h_phase * h_amp;
    }
    return vals;
  };
  auto result = refine_simpson<std::complex<double>>(sampler, -half_width, half_width,
                                                     cfg.quad_step, rel_tol);
  const double inv_two_pi = 1.0 / (2.0 * 3.14159265358979323846);
  result.value *= inv_two_pi;
  return result;
}

}  // namespace detail

// The +-log T window piece of the shifted Perron contour,
//   R_H(s) = (1/2 pi) int_{-log T}^{log T} Gamma(sigma0-sigma+i tau)
//            zeta(sigma0+i(t+tau)) H^{i tau} dtau,
// refined by step halving to relative 1e-6.
inline std::complex<double> perron_remainder(std::complex<double> s, double H, double sigma0,
                                             double T, const EvalConfig& cfg = {},
                                             int threads = 0) {
  detail::check_perron_args(s, H, sigma0, T);
  cfg.validate();
  return detail::perron_line_integral(s, H, sigma0, std::log(T), 0.0, cfg, 1e-6, threads).value;
}

// Reconstructs zeta(s) from the decomposition and reports the residual. The
// |tau| >= log T tail is absorbed by extending the quadrature window to
// max(log T, cfg.quad_tmax_floor); beyond that half-width the Gamma decay
// e^{-pi |tau| / 2} makes the dropped tail negligible at double precision.
inline DecompositionReport decomposition_check(std::complex<double> s, double H, double sigma0,
                                               double T, const EvalConfig& cfg = {},
                                               int threads = 0) {
  detail::check_perron_args(s, H, sigma0, T);
  if (!(std::abs(s.imag()) >= 1.0))
    throw validation_error("decomposition_check: need |t| >= 1");
  cfg.validate();

  DecompositionReport rep;
  rep.s = s;
  rep.H = H;
  rep.sigma0 = sigma0;
  rep.zeta_h = zeta_smoothed(s, H, cfg);
  // Gamma(1-s) H^{1-s} through logs; underflows to 0 for large |t|, which is
  // below any other term here
  const std::complex<double> one_minus_s = 1.0 - s;
  rep.residue_term = std::exp(complex_log_gamma(one_minus_s) + one_minus_s * std::log(H));

  const double half_width = std::max(std::log(T), cfg.quad_tmax_floor);
  rep.perron_integral =
      detail::perron_line_integral(s, H, sigma0, half_width, sigma0 - s.real(), cfg, 1e-8, threads)
          .value;

  rep.lhs = zeta(s, cfg);
  rep.rhs = rep.zeta_h - rep.residue_term - rep.perron_integral;
  rep.residual = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace zetashift
