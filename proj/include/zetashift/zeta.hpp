#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "zetashift/errors.hpp"
#include "zetashift/parallel.hpp"

namespace zetashift {

// Tuning knobs of the evaluation backend. Defaults meet the stated accuracy
// targets on the supported range |Im s| <= 1e6.
struct EvalConfig {
  int em_terms = 1;             // multiplies the Euler-Maclaurin truncation length
  int em_corrections = 10;      // Bernoulli correction terms, at most 20
  double tail_cutoff = 1e-18;   // smoothed-series truncation threshold
  double quad_step = 0.02;      // initial step of line-integral quadrature
  double quad_tmax_floor = 40;  // minimum half-width of the shifted-line window

  void validate() const {
    if (em_terms < 1 || em_terms > 16)
      throw validation_error("EvalConfig: em_terms must lie in [1,16]");
    if (em_corrections < 1 || em_corrections > 20)
      throw validation_error("EvalConfig: em_corrections must lie in [1,20]");
    if (!(tail_cutoff > 0)) throw validation_error("EvalConfig: tail_cutoff must be positive");
    if (!(quad_step > 0)) throw validation_error("EvalConfig: quad_step must be positive");
    if (!(quad_tmax_floor > 0)) throw validation_error("EvalConfig: quad_tmax_floor must be positive");
  }
};

inline constexpr double kMaxOrdinate = 1e6;
inline constexpr double kMaxSmoothingLength = 1e6;
inline constexpr std::size_t kMaxGridSamples = std::size_t{1} << 25;

namespace detail {

// B_{2k} for k = 1..20
inline constexpr double kBernoulli2k[21] = {
    0.0,
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
    -7709321041217.0 / 510.0,
    2577687858367.0 / 6.0,
    -26315271553053477373.0 / 1919190.0,
    2929993913841559.0 / 6.0,
    -261082718496449122051.0 / 13530.0,
};

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline std::size_t em_truncation(double abs_t, const EvalConfig& cfg) {
  double n = std::ceil(1.3 * cfg.em_terms * (1.0 + abs_t));
  double floor_n = 20.0 * cfg.em_terms;
  return static_cast<std::size_t>(std::max(n, floor_n));
}

// Euler-Maclaurin tail at truncation N:
//   N^{1-s}/(s-1) + N^{-s}/2 + sum_k B_{2k}/(2k)! (s)_{2k-1} N^{-s-2k+1}
inline std::complex<double> em_tail(std::complex<double> s, double n_trunc, int corrections) {
  double log_n = std::log(n_trunc);
  std::complex<double> n_pow_ms = std::exp(-s * log_n);  // N^{-s}
  std::complex<double> tail = n_trunc * n_pow_ms / (s - 1.0) + 0.5 * n_pow_ms;
  std::complex<double> rising = s;             // (s)(s+1)...(s+2k-2), starts at k=1
  std::complex<double> n_shift = n_pow_ms / n_trunc;  // N^{-s-2k+1} at k=1
  const double inv_n2 = 1.0 / (n_trunc * n_trunc);
  for (int k = 1; k <= corrections; ++k) {
    tail += kBernoulli2k[k] / factorial(2 * k) * rising * n_shift;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    n_shift *= inv_n2;
  }
  return tail;
}

inline void check_in_range(std::complex<double> s) {
  if (s == std::complex<double>(1.0, 0.0)) throw numeric_range_error("zeta: pole at s = 1");
  if (std::abs(s.imag()) > kMaxOrdinate)
    throw numeric_range_error("zeta: ordinate beyond supported range |t| <= 1e6");
}

}  // namespace detail

// Riemann zeta via Euler-Maclaurin summation, absolute error target 1e-9 on
// the supported range.
inline std::complex<double> zeta(std::complex<double> s, const EvalConfig& cfg = {}) {
  detail::check_in_range(s);
  cfg.validate();
  const std::size_t n_trunc = detail::em_truncation(std::abs(s.imag()), cfg);
  const double sigma = s.real(), t = s.imag();
  double sum_re = 0.0, sum_im = 0.0;
  for (std::size_t n = 1; n < n_trunc; ++n) {
    double log_n = std::log(static_cast<double>(n));
    double amp = std::exp(-sigma * log_n);
    double phase = t * log_n;
    sum_re += amp * std::cos(phase);
    sum_im -= amp * std::sin(phase);
  }
  return std::complex<double>(sum_re, sum_im) +
         detail::em_tail(s, static_cast<double>(n_trunc), cfg.em_corrections);
}

// Smoothed Dirichlet series zeta_H(s) = sum n^{-s} e^{-n/H}, truncated once
// the weight drops below cfg.tail_cutoff.
inline std::complex<double> zeta_smoothed(std::complex<double> s, double H,
                                          const EvalConfig& cfg = {}) {
  if (!(H >= 1.0)) throw validation_error("zeta_smoothed: H must be >= 1");
  if (H > kMaxSmoothingLength)
    throw numeric_range_error("zeta_smoothed: supported smoothing range is H <= 1e6");
  if (std::abs(s.imag()) > kMaxOrdinate)
    throw numeric_range_error("zeta_smoothed: ordinate beyond supported range");
  cfg.validate();
  const std::size_t n_cut =
      static_cast<std::size_t>(std::ceil(H * std::log(1.0 / cfg.tail_cutoff)));
  const double sigma = s.real(), t = s.imag();
  double sum_re = 0.0, sum_im = 0.0;
  for (std::size_t n = 1; n <= n_cut; ++n) {
    double log_n = std::log(static_cast<double>(n));
    double amp = std::exp(-sigma * log_n - static_cast<double>(n) / H);
    double phase = t * log_n;
    sum_re += amp * std::cos(phase);
    sum_im -= amp * std::sin(phase);
  }
  return {sum_re, sum_im};
}

// ---------------------------------------------------------------------------
// Grid evaluation. Values on an arithmetic progression of ordinates share
// their Dirichlet terms: n^{-i(t+dt)} = n^{-it} * n^{-i dt}, so one rotation
// per term advances the whole sum by a step. Chunks re-initialize the term
// table from scratch, which bounds rotation drift and gives results that do
// not depend on the thread count.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr std::size_t kGridChunk = 4096;
inline constexpr std::size_t kTermBlock = 2048;

// out[k] = sum_{n=1}^{count_terms} weight(n) * n^{-sigma} * n^{-i(t0 + k dt)}
template <class WeightFn>
void dirichlet_grid_sum(double sigma, double t0, double dt, std::size_t count,
                        std::size_t n_terms, WeightFn weight, int threads,
                        std::vector<std::complex<double>>& out) {
  out.assign(count, {0.0, 0.0});
  if (n_terms == 0) return;
  const std::size_t chunks = (count + kGridChunk - 1) / kGridChunk;
  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t k_begin = c * kGridChunk;
    const std::size_t k_end = std::min(count, k_begin + kGridChunk);
    const std::size_t k_len = k_end - k_begin;
    const double t_start = t0 + static_cast<double>(k_begin) * dt;
    std::vector<double> ar(kTermBlock), ai(kTermBlock), rr(kTermBlock), ri(kTermBlock);
    std::vector<double> acc_re(k_len, 0.0), acc_im(k_len, 0.0);
    for (std::size_t nb = 1; nb <= n_terms; nb += kTermBlock) {
      const std::size_t block = std::min(kTermBlock, n_terms - nb + 1);
      for (std::size_t i = 0; i < block; ++i) {
        const double log_n = std::log(static_cast<double>(nb + i));
        const double amp = weight(nb + i) * std::exp(-sigma * log_n);
        const double ph0 = t_start * log_n;
        ar[i] = amp * std::cos(ph0);
        ai[i] = -amp * std::sin(ph0);
        const double dph = dt * log_n;
        rr[i] = std::cos(dph);
        ri[i] = -std::sin(dph);
      }
      for (std::size_t k = 0; k < k_len; ++k) {
        double sr = 0.0, si = 0.0;
        for (std::size_t i = 0; i < block; ++i) {
          sr += ar[i];
          si += ai[i];
          const double nr = ar[i] * rr[i] - ai[i] * ri[i];
          ai[i] = ar[i] * ri[i] + ai[i] * rr[i];
          ar[i] = nr;
        }
        acc_re[k] += sr;
        acc_im[k] += si;
      }
    }
    for (std::size_t k = 0; k < k_len; ++k) out[k_begin + k] = {acc_re[k], acc_im[k]};
  });
}

}  // namespace detail

// zeta(sigma + i(t0 + k dt)) for k in [0, count). Each chunk uses the
// truncation length dictated by its own largest ordinate.
inline std::vector<std::complex<double>> zeta_on_grid(double sigma, double t0, double dt,
                                                      std::size_t count,
                                                      const EvalConfig& cfg = {},
                                                      int threads = 0) {
  cfg.validate();
  if (count == 0) return {};
  if (count > kMaxGridSamples)
    throw numeric_range_error("zeta_on_grid: sample count beyond supported range");
  const double t_last = t0 + dt * static_cast<double>(count - 1);
  if (std::abs(t0) > kMaxOrdinate || std::abs(t_last) > kMaxOrdinate)
    throw numeric_range_error("zeta_on_grid: ordinate beyond supported range");

  if (sigma == 1.0 && dt != 0.0) {
    // does any grid point land exactly on the pole?
    double k_star = std::round(-t0 / dt);
    if (k_star >= 0 && k_star < static_cast<double>(count) && t0 + k_star * dt == 0.0)
      throw numeric_range_error("zeta_on_grid: grid touches the pole s = 1");
  }
  if (sigma == 1.0 && dt == 0.0 && t0 == 0.0)
    throw numeric_range_error("zeta_on_grid: grid touches the pole s = 1");

  std::vector<std::complex<double>> out(count);
  const std::size_t chunks = (count + detail::kGridChunk - 1) / detail::kGridChunk;
  // one sub-grid per chunk keeps truncation lengths adapted to |t|
  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    const std::size_t k_begin = c * detail::kGridChunk;
    const std::size_t k_end = std::min(count, k_begin + detail::kGridChunk);
    const std::size_t k_len = k_end - k_begin;
    const double chunk_t0 = t0 + static_cast<double>(k_begin) * dt;
    double abs_max = std::max(std::abs(chunk_t0),
                              std::abs(chunk_t0 + dt * static_cast<double>(k_len - 1)));
    const std::size_t n_trunc = detail::em_truncation(abs_max, cfg);
    std::vector<std::complex<double>> part;
    detail::dirichlet_grid_sum(
        sigma, chunk_t0, dt, k_len, n_trunc - 1, [](std::size_t) { return 1.0; }, 1, part);
    for (std::size_t k = 0; k < k_len; ++k) {
      const std::complex<double> s(sigma, chunk_t0 + dt * static_cast<double>(k));
      out[k_begin + k] =
          part[k] + detail::em_tail(s, static_cast<double>(n_trunc), cfg.em_corrections);
    }
  });
  return out;
}

// zeta_H(sigma + i(t0 + k dt)) for k in [0, count).
inline std::vector<std::complex<double>> zeta_smoothed_on_grid(double sigma, double H, double t0,
                                                               double dt, std::size_t count,
                                                               const EvalConfig& cfg = {},
                                                               int threads = 0) {
  if (!(H >= 1.0)) throw validation_error("zeta_smoothed_on_grid: H must be >= 1");
  if (H > kMaxSmoothingLength)
    throw numeric_range_error("zeta_smoothed_on_grid: supported smoothing range is H <= 1e6");
  cfg.validate();
  if (count == 0) return {};
  if (count > kMaxGridSamples)
    throw numeric_range_error("zeta_smoothed_on_grid: sample count beyond supported range");
  const double t_last = t0 + dt * static_cast<double>(count - 1);
  if (std::abs(t0) > kMaxOrdinate || std::abs(t_last) > kMaxOrdinate)
    throw numeric_range_error("zeta_smoothed_on_grid: ordinate beyond supported range");
  const std::size_t n_cut =
      static_cast<std::size_t>(std::ceil(H * std::log(1.0 / cfg.tail_cutoff)));
  std::vector<std::complex<double>> out;
  detail::dirichlet_grid_sum(
      sigma, t0, dt, count, n_cut,
      [H](std::size_t n) { return std::exp(-static_cast<double>(n) / H); }, threads, out);
  return out;
}

}  // namespace zetashift
