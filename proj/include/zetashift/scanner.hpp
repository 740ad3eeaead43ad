#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "zetashift/errors.hpp"
#include "zetashift/mean_square.hpp"
#include "zetashift/parallel.hpp"
#include "zetashift/zeta.hpp"

namespace zetashift {

// Closed disk strictly inside the strip 1/2 < sigma < 1. Disks keep the
// sup-norm computable: the approximation error zeta - f is holomorphic on the
// disk, so its maximum modulus is attained on the boundary circle.
struct DiskDomain {
  double center_sigma = 0.75;
  double center_t = 0.0;
  double radius = 0.05;

  void validate() const {
    if (!(radius > 0.0)) throw validation_error("disk: radius must be positive");
    if (!(center_sigma - radius > 0.5))
      throw validation_error("disk: must stay strictly right of sigma = 1/2");
    if (!(center_sigma + radius < 1.0))
      throw validation_error("disk: must stay strictly left of sigma = 1");
  }

  std::complex<double> boundary_point(double angle) const {
    return {center_sigma + radius * std::cos(angle), center_t + radius * std::sin(angle)};
  }
};

// Approximation target: a constant, a polynomial in s, or exp of a
// polynomial. The first two are admissible only if they stay away from zero
// on the disk; exp never vanishes.
class Target {
 public:
  enum class Kind { constant, polynomial, exp_polynomial };

  static Target constant(std::complex<double> c) { return Target(Kind::constant, {c}); }
  static Target polynomial(std::vector<std::complex<double>> coeffs) {
    if (coeffs.empty()) throw validation_error("target: empty coefficient list");
    return Target(Kind::polynomial, std::move(coeffs));
  }
  static Target exp_polynomial(std::vector<std::complex<double>> coeffs) {
    if (coeffs.empty()) throw validation_error("target: empty coefficient list");
    return Target(Kind::exp_polynomial, std::move(coeffs));
  }

  Kind kind() const { return kind_; }
  const std::vector<std::complex<double>>& coefficients() const { return coeffs_; }

  std::complex<double> eval(std::complex<double> s) const {
    std::complex<double> p = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) p = p * s + coeffs_[i];
    return kind_ == Kind::exp_polynomial ? std::exp(p) : p;
  }

  // numeric non-vanishing check over a boundary + interior grid of the disk
  void verify_admissible(const DiskDomain& disk) const {
    disk.validate();
    if (kind_ == Kind::exp_polynomial) return;  // never zero
    double min_mod = std::abs(eval({disk.center_sigma, disk.center_t}));
    for (int ring = 1; ring <= 12; ++ring) {
      double r = disk.radius * ring / 12.0;
      for (int a = 0; a < 48; ++a) {
        double angle = 2.0 * 3.14159265358979323846 * a / 48.0;
        std::complex<double> s{disk.center_sigma + r * std::cos(angle),
                               disk.center_t + r * std::sin(angle)};
        min_mod = std::min(min_mod, std::abs(eval(s)));
      }
    }
    if (!(min_mod > 1e-6))
      throw validation_error("target: vanishes (or nearly) on the disk, not admissible");
  }

 private:
  Target(Kind k, std::vector<std::complex<double>> c) : kind_(k), coeffs_(std::move(c)) {}
  Kind kind_;
  std::vector<std::complex<double>> coeffs_;
};

struct ScanResult {
  Window window;
  double epsilon = 0.0;
  double density = 0.0;           // accepted / total on the sample grid
  double measure_estimate = 0.0;  // density * H
  double best_tau = 0.0;
  double best_distance = 0.0;
  std::size_t samples = 0;
};

// A scan with its full per-sample record (tau, applied shift, sup-distance).
struct ScanRun {
  ScanResult result;
  std::vector<double> taus;
  std::vector<double> shifts;
  std::vector<double> distances;
};

namespace detail {

inline std::vector<std::complex<double>> boundary_points(const DiskDomain& disk, int samples) {
  std::vector<std::complex<double>> pts(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j)
    pts[static_cast<std::size_t>(j)] =
        disk.boundary_point(2.0 * 3.14159265358979323846 * j / samples);
  return pts;
}

inline void check_scan_ordinates(double lo, double hi) {
  if (std::abs(lo) > kMaxOrdinate || std::abs(hi) > kMaxOrdinate)
    throw numeric_range_error("scan: shifted ordinate beyond the evaluation range |t| <= 1e6");
}

}  // namespace detail

// max over boundary points of |zeta(s + i tau) - f(s)| for an arbitrary
// evaluable target; the Target overload is the production entry.
inline double sup_distance_fn(double tau, const DiskDomain& disk,
                              const std::function<std::complex<double>(std::complex<double>)>& f,
                              int boundary_samples, const EvalConfig& cfg = {}) {
  disk.validate();
  if (boundary_samples < 16) throw validation_error("sup_distance: need >= 16 boundary samples");
  detail::check_scan_ordinates(disk.center_t - disk.radius + tau,
                               disk.center_t + disk.radius + tau);
  double worst = 0.0;
  for (const auto& s : detail::boundary_points(disk, boundary_samples)) {
    std::complex<double> shifted = zeta({s.real(), s.imag() + tau}, cfg);
    worst = std::max(worst, std::abs(shifted - f(s)));
  }
  return worst;
}

inline double sup_distance(double tau, const DiskDomain& disk, const Target& target,
                           int boundary_samples, const EvalConfig& cfg = {}) {
  target.verify_admissible(disk);
  return sup_distance_fn(tau, disk, [&](std::complex<double> s) { return target.eval(s); },
                         boundary_samples, cfg);
}

// doubles the boundary sampling until the sup stabilizes to rel_tol
inline double sup_distance_converged(double tau, const DiskDomain& disk, const Target& target,
                                     int initial_samples = 16, double rel_tol = 1e-3,
                                     const EvalConfig& cfg = {}) {
  double prev = sup_distance(tau, disk, target, initial_samples, cfg);
  for (int n = 2 * initial_samples; n <= 4096; n *= 2) {
    double cur = sup_distance(tau, disk, target, n, cfg);
    if (std::abs(cur - prev) <= rel_tol * std::max(cur, 1e-30)) return cur;
    prev = cur;
  }
  return prev;
}

// ---------------------------------------------------------------------------
// Scan engines. Shifts on an arithmetic progression ride the grid evaluator's
// per-term rotations; arbitrary shift lists take the direct path with a
// per-boundary-point table of n^{-sigma_j} e^{-i y_j log n}.
// ---------------------------------------------------------------------------

inline std::vector<double> sup_distances_on_ap(const DiskDomain& disk, const Target& target,
                                               double shift0, double dshift, std::size_t count,
                                               int boundary_samples, const EvalConfig& cfg = {},
                                               int threads = 0) {
  disk.validate();
  target.verify_admissible(disk);
  if (boundary_samples < 16) throw validation_error("scan: need >= 16 boundary samples");
  const double last = shift0 + dshift * static_cast<double>(count - 1);
  detail::check_scan_ordinates(disk.center_t - disk.radius + std::min(shift0, last),
                               disk.center_t + disk.radius + std::max(shift0, last));
  std::vector<double> dist(count, 0.0);
  auto pts = detail::boundary_points(disk, boundary_samples);
  for (const auto& s : pts) {
    auto row = zeta_on_grid(s.real(), s.imag() + shift0, dshift, count, cfg, threads);
    const std::complex<double> f = target.eval(s);
    for (std::size_t k = 0; k < count; ++k)
      dist[k] = std::max(dist[k], std::abs(row[k] - f));
  }
  return dist;
}

inline std::vector<double> sup_distances_at(const DiskDomain& disk, const Target& target,
                                            const std::vector<double>& shifts,
                                            int boundary_samples, const EvalConfig& cfg = {},
                                            int threads = 0) {
  disk.validate();
  target.verify_admissible(disk);
  if (boundary_samples < 16) throw validation_error("scan: need >= 16 boundary samples");
  cfg.validate();
  if (shifts.empty()) return {};
  double lo = shifts[0], hi = shifts[0];
  for (double v : shifts) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  detail::check_scan_ordinates(disk.center_t - disk.radius + lo,
                               disk.center_t + disk.radius + hi);

  if (shifts.size() > kMaxGridSamples)
    throw numeric_range_error("scan: sample count beyond supported range");

  const auto pts = detail::boundary_points(disk, boundary_samples);
  const std::size_t J = pts.size();
  const double y_abs = std::abs(disk.center_t) + disk.radius;
  const std::size_t n_max =
      detail::em_truncation(std::max(std::abs(lo), std::abs(hi)) + y_abs + 1.0, cfg);

  // per boundary point: w_{j,n} = n^{-sigma_j} e^{-i y_j log n}, j-major rows;
  // the table is capped at ~256 MB, terms past it are rebuilt on the fly
  const std::size_t n_table = std::min(n_max, (std::size_t{1} << 28) / (J * 16));
  std::vector<double> wr(n_table * J), wi(n_table * J);
  std::vector<std::complex<double>> f_vals(J);
  for (std::size_t j = 0; j < J; ++j) f_vals[j] = target.eval(pts[j]);
  parallel_for_chunks((n_table + 4095) / 4096, threads, [&](std::size_t blk) {
    const std::size_t n_lo = blk * 4096 + 1, n_hi = std::min(n_table, n_lo + 4095);
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
      const double log_n = std::log(static_cast<double>(n));
      for (std::size_t j = 0; j < J; ++j) {
        const double amp = std::exp(-pts[j].real() * log_n);
        const double ph = pts[j].imag() * log_n;
        wr[(n - 1) * J + j] = amp * std::cos(ph);
        wi[(n - 1) * J + j] = -amp * std::sin(ph);
      }
    }
  });

  std::vector<double> dist(shifts.size(), 0.0);
  const std::size_t chunk = 256;
  const std::size_t chunks = (shifts.size() + chunk - 1) / chunk;
  parallel_for_chunks(chunks, threads, [&](std::size_t c) {
    std::vector<double> accr(J), acci(J);
    const std::size_t k_lo = c * chunk, k_hi = std::min(shifts.size(), k_lo + chunk);
    for (std::size_t k = k_lo; k < k_hi; ++k) {
      const double shift = shifts[k];
      const std::size_t n_trunc = detail::em_truncation(std::abs(shift) + y_abs + 1.0, cfg);
      std::fill(accr.begin(), accr.end(), 0.0);
      std::fill(acci.begin(), acci.end(), 0.0);
      const std::size_t n_cached = std::min(n_trunc, n_table + 1);
      for (std::size_t n = 1; n < n_cached; ++n) {
        const double log_n = std::log(static_cast<double>(n));
        const double c0 = std::cos(shift * log_n);
        const double s0 = std::sin(shift * log_n);
        const double* row_r = &wr[(n - 1) * J];
        const double* row_i = &wi[(n - 1) * J];
        for (std::size_t j = 0; j < J; ++j) {
          // w * e^{-i shift log n}
          accr[j] += row_r[j] * c0 + row_i[j] * s0;
          acci[j] += row_i[j] * c0 - row_r[j] * s0;
        }
      }
      for (std::size_t n = n_cached; n < n_trunc; ++n) {
        const double log_n = std::log(static_cast<double>(n));
        const double c0 = std::cos(shift * log_n);
        const double s0 = std::sin(shift * log_n);
        for (std::size_t j = 0; j < J; ++j) {
          const double amp = std::exp(-pts[j].real() * log_n);
          const double ph = pts[j].imag() * log_n;
          const double w_r = amp * std::cos(ph);
          const double w_i = -amp * std::sin(ph);
          accr[j] += w_r * c0 + w_i * s0;
          acci[j] += w_i * c0 - w_r * s0;
        }
      }
      double worst = 0.0;
      for (std::size_t j = 0; j < J; ++j) {
        const std::complex<double> s(pts[j].real(), pts[j].imag() + shift);
        const std::complex<double> val =
            std::complex<double>(accr[j], acci[j]) +
            detail::em_tail(s, static_cast<double>(n_trunc), cfg.em_corrections);
        worst = std::max(worst, std::abs(val - f_vals[j]));
      }
      dist[k] = worst;
    }
  });
  return dist;
}

namespace detail {

inline ScanRun assemble_scan(Window w, double epsilon, std::vector<double> taus,
                             std::vector<double> shifts, std::vector<double> distances) {
  ScanRun run;
  run.result.window = w;
  run.result.epsilon = epsilon;
  run.result.samples = distances.size();
  std::size_t accepted = 0;
  double best_d = std::numeric_limits<double>::infinity();
  double best_tau = taus.empty() ? 0.0 : taus[0];
  for (std::size_t k = 0; k < distances.size(); ++k) {
    if (distances[k] < epsilon) ++accepted;
    if (distances[k] < best_d) {
      best_d = distances[k];
      best_tau = taus[k];
    }
  }
  run.result.density =
      distances.empty() ? 0.0 : static_cast<double>(accepted) / static_cast<double>(distances.size());
  run.result.measure_estimate = run.result.density * w.H;
  run.result.best_tau = best_tau;
  run.result.best_distance = best_d;
  run.taus = std::move(taus);
  run.shifts = std::move(shifts);
  run.distances = std::move(distances);
  return run;
}

}  // namespace detail

// Samples tau = T, T+step, ..., T+H and reports the fraction with
// sup-distance below epsilon.
inline ScanRun scan_interval(const DiskDomain& disk, const Target& target, const Window& w,
                             double epsilon, int boundary_samples = 32, const EvalConfig& cfg = {},
                             int threads = 0) {
  w.validate();
  if (!(w.step <= 0.1)) throw validation_error("scan: step must be <= 0.1");
  if (!(epsilon > 0.0)) throw validation_error("scan: epsilon must be positive");
  if (w.H / w.step >= static_cast<double>(kMaxGridSamples))
    throw numeric_range_error("scan: sample count beyond supported range");
  const std::size_t count = static_cast<std::size_t>(std::floor(w.H / w.step + 1e-9)) + 1;
  std::vector<double> taus(count);
  for (std::size_t k = 0; k < count; ++k) taus[k] = w.T + w.step * static_cast<double>(k);
  auto dist = sup_distances_on_ap(disk, target, w.T, w.step, count, boundary_samples, cfg, threads);
  std::vector<double> shifts = taus;
  return detail::assemble_scan(w, epsilon, std::move(taus), std::move(shifts), std::move(dist));
}

// Densities for an ascending epsilon list, reusing one scan's distances.
inline std::vector<std::pair<double, double>> density_curve(const ScanRun& run,
                                                            const std::vector<double>& eps_list) {
  for (std::size_t i = 1; i < eps_list.size(); ++i)
    if (!(eps_list[i] >= eps_list[i - 1]))
      throw validation_error("density_curve: epsilon list must be ascending");
  std::vector<double> sorted = run.distances;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(eps_list.size());
  for (double eps : eps_list) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), eps);
    double dens = sorted.empty()
                      ? 0.0
                      : static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
    out.emplace_back(eps, dens);
  }
  return out;
}

}  // namespace zetashift
