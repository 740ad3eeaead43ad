#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "zetashift/errors.hpp"
#include "zetashift/scanner.hpp"

namespace zetashift {

// Shift functions phi > 0 with psi = phi'/phi available in closed form, so
// the axiom checks never lean on numerical differentiation. Three families:
//   polynomial   p(tau)                    psi = p'/p        (decreasing)
//   exp_poly     alpha^{p(tau)}            psi = p' ln alpha (non-decreasing)
//   double_exp   alpha^{beta^{p(tau)}}     psi = ln(alpha) ln(beta) p' beta^{p}
class PhiFunction {
 public:
  enum class Family { polynomial, exp_poly, double_exp };

  static PhiFunction polynomial(std::vector<double> coeffs) {
    return PhiFunction(Family::polynomial, std::exp(1.0), std::exp(1.0), std::move(coeffs));
  }
  static PhiFunction exp_poly(double base, std::vector<double> coeffs) {
    return PhiFunction(Family::exp_poly, base, std::exp(1.0), std::move(coeffs));
  }
  static PhiFunction double_exp(double alpha, double beta, std::vector<double> coeffs) {
    return PhiFunction(Family::double_exp, alpha, beta, std::move(coeffs));
  }

  Family family() const { return family_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  const std::vector<double>& coefficients() const { return coeffs_; }

  // polynomial p(tau) = tau, the shift that reduces to a plain interval scan
  bool is_identity() const {
    return family_ == Family::polynomial && coeffs_.size() == 2 && coeffs_[0] == 0.0 &&
           coeffs_[1] == 1.0;
  }

  double poly_at(double tau) const {
    double p = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) p = p * tau + coeffs_[i];
    return p;
  }
  double poly_derivative_at(double tau) const {
    double d = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 1;)
      d = d * tau + coeffs_[i] * static_cast<double>(i);
    return d;
  }

  double log_value(double tau) const {
    switch (family_) {
      case Family::polynomial: {
        double p = poly_at(tau);
        if (!(p > 0.0)) throw numeric_range_error("phi: not positive at tau");
        return std::log(p);
      }
      case Family::exp_poly:
        return poly_at(tau) * std::log(alpha_);
      case Family::double_exp:
        return std::exp(poly_at(tau) * std::log(beta_)) * std::log(alpha_);
    }
    return 0.0;
  }

  double value(double tau) const {
    double lv = log_value(tau);
    if (lv > 709.0) throw numeric_range_error("phi: value overflows double");
    return std::exp(lv);
  }

  // psi = phi'/phi in closed form per family
  double psi(double tau) const {
    switch (family_) {
      case Family::polynomial: {
        double p = poly_at(tau);
        if (!(p > 0.0)) throw numeric_range_error("phi: not positive at tau");
        return poly_derivative_at(tau) / p;
      }
      case Family::exp_poly:
        return poly_derivative_at(tau) * std::log(alpha_);
      case Family::double_exp:
        return std::log(alpha_) * std::log(beta_) * poly_derivative_at(tau) *
               std::exp(poly_at(tau) * std::log(beta_));
    }
    return 0.0;
  }

  double log_derivative_value(double tau) const {  // log phi'
    return log_value(tau) + std::log(psi(tau));
  }

  // the partition construction needs non-decreasing psi
  bool psi_non_decreasing() const { return family_ != Family::polynomial; }

 private:
  PhiFunction(Family f, double alpha, double beta, std::vector<double> coeffs)
      : family_(f), alpha_(alpha), beta_(beta), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) throw validation_error("phi: polynomial degree must be >= 1");
    while (coeffs_.size() > 2 && coeffs_.back() == 0.0) coeffs_.pop_back();
    if (!(coeffs_.back() > 0.0))
      throw validation_error("phi: leading polynomial coefficient must be positive");
    if (f != Family::polynomial && !(alpha_ > 1.0))
      throw validation_error("phi: base alpha must exceed 1");
    if (f == Family::double_exp && !(beta_ > 1.0))
      throw validation_error("phi: base beta must exceed 1");
  }

  Family family_;
  double alpha_, beta_;
  std::vector<double> coeffs_;
};

inline double psi_of(const PhiFunction& phi, double tau) {
  if (!(tau > 0.0)) throw validation_error("psi_of: tau must be positive");
  double v = phi.psi(tau);
  if (!(v > 0.0) || !std::isfinite(v))
    throw numeric_range_error("psi_of: psi not finite and positive at tau");
  return v;
}

// Observed axiom constants over a sampled range [T, 2T].
struct AxiomReport {
  enum class Case { increasing_bounded_step, decreasing_lower_bounded };

  bool axiom_i_ok = false;
  double axiom_i_constant = 0.0;  // max phi'(tau + 1/psi(tau)) / phi'(tau)
  Case axiom_ii_case = Case::increasing_bounded_step;
  bool axiom_ii_ok = false;
  double axiom_ii_constant = 0.0;  // observed A (increasing) or B (decreasing)
  double observed_psi_step = 0.0;  // sup of psi(tau + 1/psi) - psi(tau), increasing case
  double range_lo = 0.0;
  double range_hi = 0.0;
};

inline AxiomReport check_axioms(const PhiFunction& phi, double T, int samples = 256) {
  if (!(T >= 3.0)) throw validation_error("check_axioms: T must be >= 3");
  if (samples < 100) throw validation_error("check_axioms: need at least 100 samples");
  AxiomReport rep;
  rep.range_lo = T;
  rep.range_hi = 2.0 * T;

  const double dt = T / static_cast<double>(samples - 1);
  double max_ratio = 0.0;
  bool ratios_finite = true;
  bool derivative_increasing = true;
  double prev_log_deriv = phi.log_derivative_value(T);
  double psi_min = phi.psi(T), psi_max_step = 0.0;
  bool psi_monotone = true;
  const bool increasing = phi.psi_non_decreasing();
  double min_tau_psi = std::numeric_limits<double>::infinity();

  for (int i = 0; i < samples; ++i) {
    const double tau = T + dt * static_cast<double>(i);
    const double psi_tau = phi.psi(tau);
    if (!(psi_tau > 0.0) || !std::isfinite(psi_tau))
      throw numeric_range_error("check_axioms: psi must stay finite and positive");
    const double step = 1.0 / psi_tau;

    const double log_ratio = phi.log_derivative_value(tau + step) - phi.log_derivative_value(tau);
    const double ratio = std::exp(std::min(log_ratio, 709.0));
    if (!std::isfinite(log_ratio)) ratios_finite = false;
    max_ratio = std::max(max_ratio, ratio);

    if (i > 0) {
      const double cur_log_deriv = phi.log_derivative_value(tau);
      if (cur_log_deriv < prev_log_deriv - 1e-12 * std::abs(prev_log_deriv))
        derivative_increasing = false;
      prev_log_deriv = cur_log_deriv;
    }

    const double psi_after = phi.psi(tau + step);
    if (increasing) {
      if (psi_after < psi_tau * (1.0 - 1e-12)) psi_monotone = false;
      psi_max_step = std::max(psi_max_step, psi_after - psi_tau);
      psi_min = std::min(psi_min, psi_tau);
    } else {
      if (i > 0 && phi.psi(tau) > phi.psi(tau - dt) * (1.0 + 1e-12)) psi_monotone = false;
      min_tau_psi = std::min(min_tau_psi, tau * psi_tau);
    }
  }

  rep.axiom_i_ok = ratios_finite && derivative_increasing;
  rep.axiom_i_constant = max_ratio;
  if (increasing) {
    rep.axiom_ii_case = AxiomReport::Case::increasing_bounded_step;
    rep.observed_psi_step = psi_max_step;
    rep.axiom_ii_constant = std::max(psi_max_step, 1.0 / psi_min);
    rep.axiom_ii_ok = psi_monotone;
  } else {
    rep.axiom_ii_case = AxiomReport::Case::decreasing_lower_bounded;
    rep.axiom_ii_constant = min_tau_psi;  // largest B with psi >= B/tau on the range
    rep.axiom_ii_ok = psi_monotone && min_tau_psi > 0.0;
  }
  return rep;
}

// min over [T,2T] of phi(tau + C/psi(tau)) / phi(tau), which the mean value
// theorem bounds below by C+1. Computed in log space; the reported ratio
// saturates at the largest double.
struct GrowthReport {
  double min_ratio = 0.0;
  double min_log_ratio = 0.0;
  bool ok = false;
};

inline GrowthReport growth_check(const PhiFunction& phi, double T, double C, int samples = 256) {
  if (!(T >= 3.0)) throw validation_error("growth_check: T must be >= 3");
  if (!(C > 0.0)) throw validation_error("growth_check: C must be positive");
  if (samples < 2) throw validation_error("growth_check: need at least 2 samples");
  const double dt = T / static_cast<double>(samples - 1);
  double min_log_ratio = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) {
    const double tau = T + dt * static_cast<double>(i);
    const double psi_tau = phi.psi(tau);
    if (!(psi_tau > 0.0) || !std::isfinite(psi_tau))
      throw numeric_range_error("growth_check: psi must stay finite and positive");
    const double log_ratio = phi.log_value(tau + C / psi_tau) - phi.log_value(tau);
    min_log_ratio = std::min(min_log_ratio, log_ratio);
  }
  GrowthReport rep;
  rep.min_log_ratio = min_log_ratio;
  rep.min_ratio = std::exp(std::min(min_log_ratio, 709.0));
  rep.ok = min_log_ratio >= std::log(C + 1.0) - 1e-12;
  return rep;
}

// The recursion T_k = T_{k-1} + 1/psi(T_{k-1}) until 2T is passed. Telescoping
// makes sum_check and endpoint_check agree up to accumulated rounding.
struct PartitionResult {
  std::vector<double> points;  // T_0 = T up to the first T_K >= 2T
  std::size_t K = 0;           // number of steps taken
  double sum_check = 0.0;      // sum of 1/psi(T_{k-1}) minus T
  double endpoint_check = 0.0; // T_K - 2T
};

inline PartitionResult build_partition(const PhiFunction& phi, double T) {
  if (!(T >= 3.0)) throw validation_error("build_partition: T must be >= 3");
  if (!phi.psi_non_decreasing())
    throw validation_error(
        "build_partition: defined for the non-decreasing psi families only "
        "(polynomial shifts take the change-of-variables route instead)");
  PartitionResult res;
  res.points.push_back(T);
  double step_sum = 0.0;
  const std::size_t hard_cap = 50'000'000;
  while (res.points.back() < 2.0 * T) {
    const double tau = res.points.back();
    const double psi_tau = phi.psi(tau);
    if (!(psi_tau > 0.0) || !std::isfinite(psi_tau))
      throw numeric_range_error("build_partition: psi must stay finite and positive");
    const double step = 1.0 / psi_tau;
    if (!(step > 0.0) || res.points.size() > hard_cap)
      throw numeric_range_error("build_partition: step underflow or point cap exceeded");
    step_sum += step;
    res.points.push_back(tau + step);
  }
  res.K = res.points.size() - 1;
  res.sum_check = step_sum - T;
  res.endpoint_check = res.points.back() - 2.0 * T;
  return res;
}

// Scan of tau in [T, 2T] with the shift tau -> phi(tau). The identity
// polynomial routes through the plain interval scan, sample for sample.
inline ScanRun scan_shifted(const PhiFunction& phi, const DiskDomain& disk, const Target& target,
                            double T, double step, double epsilon, int boundary_samples = 32,
                            const EvalConfig& cfg = {}, int threads = 0) {
  Window w{T, T, step};
  w.validate();
  if (!(epsilon > 0.0)) throw validation_error("scan: epsilon must be positive");
  if (phi.is_identity()) return scan_interval(disk, target, w, epsilon, boundary_samples, cfg, threads);

  if (w.H / w.step >= static_cast<double>(kMaxGridSamples))
    throw numeric_range_error("scan: sample count beyond supported range");
  const std::size_t count = static_cast<std::size_t>(std::floor(w.H / w.step + 1e-9)) + 1;
  std::vector<double> taus(count), shifts(count);
  for (std::size_t k = 0; k < count; ++k) {
    taus[k] = w.T + w.step * static_cast<double>(k);
    shifts[k] = phi.value(taus[k]);
  }
  auto dist = sup_distances_at(disk, target, shifts, boundary_samples, cfg, threads);
  return detail::assemble_scan(w, epsilon, std::move(taus), std::move(shifts), std::move(dist));
}

}  // namespace zetashift
