#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "zetashift/errors.hpp"
#include "zetashift/quadrature.hpp"
#include "zetashift/zeta.hpp"

namespace zetashift {

// An interval [T, T+H] with the step used to sample it. Scans may use long
// windows (H > T); the short-interval moment operations additionally require
// H <= T.
struct Window {
  double T = 3.0;
  double H = 1.0;
  double step = 0.05;

  void validate() const {
    if (!(T >= 3.0)) throw validation_error("window: T must be >= 3");
    if (!(H >= 1.0)) throw validation_error("window: H must be >= 1");
    if (!(step > 0.0)) throw validation_error("window: step must be positive");
    if (!(step <= H / 10.0)) throw validation_error("window: step must be <= H/10");
  }
  void validate_short_interval() const {
    validate();
    if (!(H <= T)) throw validation_error("window: short intervals require H <= T");
  }
};

// (1/H) int_T^{T+H} |zeta(sigma+it)|^2 dt against its expected central value
// zeta(2 sigma); on the critical line the reference switches to log T.
struct MeanSquareResult {
  double sigma = 0.0;
  Window window;
  double value = 0.0;
  double reference = 0.0;
  bool log_scaled_reference = false;
  double ratio = 0.0;
  double refinement_delta = 0.0;
  // final quadrature grid, for per-subinterval exports
  double sample_step = 0.0;
  std::vector<double> integrand_samples;
};

namespace detail {

inline std::function<std::vector<double>(double, double, std::size_t)> abs2_sampler(
    double sigma, const EvalConfig& cfg, int threads) {
  return [sigma, cfg, threads](double t0, double dt, std::size_t count) {
    auto vals = zeta_on_grid(sigma, t0, dt, count, cfg, threads);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::norm(vals[i]);
    return out;
  };
}

}  // namespace detail

inline MeanSquareResult mean_square(double sigma, const Window& w, const EvalConfig& cfg = {},
                                    int threads = 0) {
  w.validate_short_interval();
  if (!(sigma >= 0.5 && sigma <= 1.0))
    throw validation_error("mean_square: sigma must lie in [1/2, 1]");
  auto integral = refine_simpson<double>(detail::abs2_sampler(sigma, cfg, threads), w.T, w.T + w.H,
                                         w.step, 1e-3);
  MeanSquareResult res;
  res.sigma = sigma;
  res.window = w;
  res.value = integral.value / w.H;
  if (sigma == 0.5) {
    res.reference = std::log(w.T);
    res.log_scaled_reference = true;
  } else {
    res.reference = zeta({2.0 * sigma, 0.0}, cfg).real();
  }
  res.ratio = res.value / res.reference;
  res.refinement_delta = integral.refinement_delta;
  res.sample_step = integral.step;
  res.integrand_samples = std::move(integral.samples);
  return res;
}

// Both sides of the short-interval mean-square bound
//   int_T^{T+H} |zeta(sigma+it)|^2 dt
//     <= C [ H + H^{2(sigma0-sigma)} / (sigma-sigma0)^2
//            int_{T-log T}^{T+H+log T} |zeta(sigma0+it)|^2 dt ],
// reporting the empirical constant lhs / rhs_bound.
struct Lemma1Report {
  double lhs = 0.0;
  double rhs_bound = 0.0;
  double implied_constant = 0.0;
};

inline Lemma1Report lemma1_check(double sigma, double sigma0, const Window& w,
                                 const EvalConfig& cfg = {}, int threads = 0) {
  w.validate_short_interval();
  if (!(sigma0 >= 0.5)) throw validation_error("lemma1_check: sigma0 must be >= 1/2");
  if (!(sigma0 < sigma && sigma <= 1.0))
    throw validation_error("lemma1_check: need 1/2 <= sigma0 < sigma <= 1");
  Lemma1Report rep;
  rep.lhs = refine_simpson<double>(detail::abs2_sampler(sigma, cfg, threads), w.T, w.T + w.H,
                                   w.step, 1e-3)
                .value;
  const double pad = std::log(w.T);
  double wide = refine_simpson<double>(detail::abs2_sampler(sigma0, cfg, threads), w.T - pad,
                                       w.T + w.H + pad, w.step, 1e-3)
                    .value;
  const double gap = sigma - sigma0;
  rep.rhs_bound = w.H + std::pow(w.H, 2.0 * (sigma0 - sigma)) / (gap * gap) * wide;
  rep.implied_constant = rep.lhs / rep.rhs_bound;
  return rep;
}

// Montgomery-Vaughan majorant for the smoothed-series second moment:
//   int_T^{T+H} |zeta_H(sigma+it)|^2 dt
//     <= C [ H sum n^{-2 sigma} e^{-2n/H} + sum n^{1-2 sigma} e^{-2n/H} ].
struct MvReport {
  double majorant = 0.0;
  double i1_estimate = 0.0;
  double ratio = 0.0;
};

inline double mv_majorant_series(double sigma, double H, double tail_cutoff = 1e-18) {
  if (!(H >= 1.0)) throw validation_error("mv_majorant: H must be >= 1");
  const std::size_t n_cut =
      static_cast<std::size_t>(std::ceil(H * std::log(1.0 / tail_cutoff) / 2.0));
  double first = 0.0, second = 0.0;
  for (std::size_t n = 1; n <= n_cut; ++n) {
    const double nn = static_cast<double>(n);
    const double weight = std::exp(-2.0 * nn / H);
    first += std::pow(nn, -2.0 * sigma) * weight;
    second += std::pow(nn, 1.0 - 2.0 * sigma) * weight;
  }
  return H * first + second;
}

inline MvReport mv_majorant(double sigma, double H, double T, const EvalConfig& cfg = {},
                            int threads = 0) {
  if (!(sigma > 0.5 && sigma <= 1.0))
    throw validation_error("mv_majorant: sigma must lie in (1/2, 1]");
  if (!(H >= 1.0)) throw validation_error("mv_majorant: H must be >= 1");
  if (!(T >= 3.0)) throw validation_error("mv_majorant: T must be >= 3");
  MvReport rep;
  rep.majorant = mv_majorant_series(sigma, H, cfg.tail_cutoff);
  auto sampler = [&](double t0, double dt, std::size_t count) {
    auto vals = zeta_smoothed_on_grid(sigma, H, t0, dt, count, cfg, threads);
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = std::norm(vals[i]);
    return out;
  };
  const double step = std::min(0.05, H / 20.0);
  rep.i1_estimate = refine_simpson<double>(sampler, T, T + H, step, 1e-3).value;
  rep.ratio = rep.i1_estimate / rep.majorant;
  return rep;
}

}  // namespace zetashift
