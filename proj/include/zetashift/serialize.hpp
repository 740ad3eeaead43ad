#pragma once

#include <charconv>
#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zetashift/decomposition.hpp"
#include "zetashift/errors.hpp"
#include "zetashift/exponent_pairs.hpp"
#include "zetashift/mean_square.hpp"
#include "zetashift/phi.hpp"
#include "zetashift/scanner.hpp"

namespace zetashift {

using Json = nlohmann::ordered_json;

enum class OutputFormat { json, csv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw validation_error("unsupported format '" + s + "' (expected json or csv)");
}

// shortest round-trip representation, deterministic across runs
inline std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// exponent pairs, hulls, ledger
// ---------------------------------------------------------------------------

inline Json pair_to_json(const ExponentPair& p) {
  return Json{{"kappa", p.kappa.to_string()},
              {"lambda", p.lambda.to_string()},
              {"eps", p.eps_limit},
              {"derivation", p.derivation.to_string()}};
}

inline ExponentPair pair_from_json(const Json& j) {
  return make_pair_checked(Rational::parse(j.at("kappa").get<std::string>()),
                           Rational::parse(j.at("lambda").get<std::string>()),
                           j.at("eps").get<bool>(),
                           Derivation::parse(j.at("derivation").get<std::string>()));
}

inline Json pairs_to_json(const std::vector<ExponentPair>& pairs) {
  Json arr = Json::array();
  for (const auto& p : pairs) arr.push_back(pair_to_json(p));
  return arr;
}

// kappa,lambda,eps,theta,log_exp,sigma_bound; theta is blank for pairs the
// given sigma does not admit
inline std::string pairs_to_csv(const std::vector<ExponentPair>& pairs, const Rational& sigma) {
  std::string out = "kappa,lambda,eps,theta,log_exp,sigma_bound\n";
  for (const auto& p : pairs) {
    out += p.kappa.to_string() + "," + p.lambda.to_string() + "," +
           (p.eps_limit ? "true" : "false") + ",";
    if (admissible_for(p, sigma)) out += t_exponent(p, sigma).to_string();
    out += "," + log_exponent(p).to_string() + "," + sigma_bound(p).to_string() + "\n";
  }
  return out;
}

inline Json ledger_entry_to_json(const LedgerEntry& e) {
  Json j{{"name", e.name},
         {"hypothesis", LedgerEntry::hypothesis_name(e.hypothesis)},
         {"h_exponent", e.h_display()}};
  j["log_exponent"] = e.log_exponent ? Json(e.log_exponent->to_string()) : Json(nullptr);
  j["sigma_restriction"] =
      e.sigma_restriction ? Json(e.sigma_restriction->to_string()) : Json(nullptr);
  return j;
}

inline LedgerEntry ledger_entry_from_json(const Json& j) {
  LedgerEntry e;
  e.name = j.at("name").get<std::string>();
  const std::string hyp = j.at("hypothesis").get<std::string>();
  if (hyp == "unconditional")
    e.hypothesis = LedgerEntry::Hypothesis::unconditional;
  else if (hyp == "Lindelof")
    e.hypothesis = LedgerEntry::Hypothesis::lindelof;
  else if (hyp == "RH")
    e.hypothesis = LedgerEntry::Hypothesis::rh;
  else if (hyp == "zero-density")
    e.hypothesis = LedgerEntry::Hypothesis::zero_density;
  else
    throw validation_error("ledger entry: unknown hypothesis '" + hyp + "'");
  const std::string h = j.at("h_exponent").get<std::string>();
  if (h == "epsilon") {
    e.h_form = LedgerEntry::HForm::epsilon;
  } else if (h == "exp((log T)^(1-epsilon))") {
    e.h_form = LedgerEntry::HForm::exp_log_one_minus_epsilon;
  } else {
    e.h_form = LedgerEntry::HForm::rational;
    e.h_exponent = Rational::parse(h);
  }
  if (!j.at("log_exponent").is_null())
    e.log_exponent = Rational::parse(j.at("log_exponent").get<std::string>());
  if (!j.at("sigma_restriction").is_null())
    e.sigma_restriction = Rational::parse(j.at("sigma_restriction").get<std::string>());
  return e;
}

inline Json ledger_to_json(const std::vector<LedgerEntry>& entries) {
  Json arr = Json::array();
  for (const auto& e : entries) arr.push_back(ledger_entry_to_json(e));
  return arr;
}

inline std::string ledger_to_csv(const std::vector<LedgerEntry>& entries) {
  std::string out = "name,hypothesis,h_exponent,log_exponent,sigma_restriction\n";
  for (const auto& e : entries) {
    out += e.name + "," + LedgerEntry::hypothesis_name(e.hypothesis) + "," + e.h_display() + ",";
    if (e.log_exponent) out += e.log_exponent->to_string();
    out += ",";
    if (e.sigma_restriction) out += e.sigma_restriction->to_string();
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// numerics reports
// ---------------------------------------------------------------------------

inline Json complex_to_json(std::complex<double> z) {
  return Json{{"re", z.real()}, {"im", z.imag()}};
}

inline std::complex<double> complex_from_json(const Json& j) {
  return {j.at("re").get<double>(), j.at("im").get<double>()};
}

inline Json decomposition_to_json(const DecompositionReport& rep) {
  return Json{{"s", complex_to_json(rep.s)},
              {"H", rep.H},
              {"sigma0", rep.sigma0},
              {"lhs", complex_to_json(rep.lhs)},
              {"rhs", complex_to_json(rep.rhs)},
              {"residual", rep.residual},
              {"parts",
               Json{{"zeta_H", complex_to_json(rep.zeta_h)},
                    {"residue_term", complex_to_json(rep.residue_term)},
                    {"perron_integral", complex_to_json(rep.perron_integral)}}}};
}

inline DecompositionReport decomposition_from_json(const Json& j) {
  DecompositionReport rep;
  rep.s = complex_from_json(j.at("s"));
  rep.H = j.at("H").get<double>();
  rep.sigma0 = j.at("sigma0").get<double>();
  rep.lhs = complex_from_json(j.at("lhs"));
  rep.rhs = complex_from_json(j.at("rhs"));
  rep.residual = j.at("residual").get<double>();
  rep.zeta_h = complex_from_json(j.at("parts").at("zeta_H"));
  rep.residue_term = complex_from_json(j.at("parts").at("residue_term"));
  rep.perron_integral = complex_from_json(j.at("parts").at("perron_integral"));
  return rep;
}

inline Json window_to_json(const Window& w) {
  return Json{{"T", w.T}, {"H", w.H}, {"step", w.step}};
}

inline Window window_from_json(const Json& j) {
  return Window{j.at("T").get<double>(), j.at("H").get<double>(), j.at("step").get<double>()};
}

inline Json mean_square_to_json(const MeanSquareResult& r) {
  return Json{{"sigma", r.sigma},
              {"window", window_to_json(r.window)},
              {"value", r.value},
              {"reference", r.reference},
              {"log_scaled_reference", r.log_scaled_reference},
              {"ratio", r.ratio},
              {"refinement_delta", r.refinement_delta}};
}

// per-panel partial integrals of the final quadrature grid
inline std::string mean_square_partials_csv(const MeanSquareResult& r) {
  std::string out = "t_lo,t_hi,partial,cumulative\n";
  const auto& f = r.integrand_samples;
  const double h = r.sample_step;
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 2 < f.size(); i += 2) {
    double t_lo = r.window.T + h * static_cast<double>(i);
    double t_hi = t_lo + 2.0 * h;
    double partial = h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    cumulative += partial;
    out += format_double(t_lo) + "," + format_double(t_hi) + "," + format_double(partial) + "," +
           format_double(cumulative) + "\n";
  }
  return out;
}

inline Json lemma1_to_json(const Lemma1Report& r) {
  return Json{{"lhs", r.lhs}, {"rhs_bound", r.rhs_bound}, {"implied_constant", r.implied_constant}};
}

inline Json mv_to_json(const MvReport& r) {
  return Json{{"majorant", r.majorant}, {"i1_estimate", r.i1_estimate}, {"ratio", r.ratio}};
}

// ---------------------------------------------------------------------------
// scans
// ---------------------------------------------------------------------------

inline Json scan_result_to_json(const ScanResult& r) {
  return Json{{"window", window_to_json(r.window)},
              {"epsilon", r.epsilon},
              {"density", r.density},
              {"measure_estimate", r.measure_estimate},
              {"best_tau", r.best_tau},
              {"best_distance", r.best_distance},
              {"samples", r.samples},
              {"note", "sampled density at desk scale; no asymptotic claim implied"}};
}

inline ScanResult scan_result_from_json(const Json& j) {
  ScanResult r;
  r.window = window_from_json(j.at("window"));
  r.epsilon = j.at("epsilon").get<double>();
  r.density = j.at("density").get<double>();
  r.measure_estimate = j.at("measure_estimate").get<double>();
  r.best_tau = j.at("best_tau").get<double>();
  r.best_distance = j.at("best_distance").get<double>();
  r.samples = j.at("samples").get<std::size_t>();
  return r;
}

inline std::string scan_samples_csv(const ScanRun& run) {
  std::string out = "tau,sup_distance\n";
  for (std::size_t k = 0; k < run.taus.size(); ++k)
    out += format_double(run.taus[k]) + "," + format_double(run.distances[k]) + "\n";
  return out;
}

inline Json density_curve_to_json(const std::vector<std::pair<double, double>>& curve) {
  Json arr = Json::array();
  for (const auto& [eps, dens] : curve) arr.push_back(Json{{"epsilon", eps}, {"density", dens}});
  return arr;
}

inline std::string density_curve_csv(const std::vector<std::pair<double, double>>& curve) {
  std::string out = "epsilon,density\n";
  for (const auto& [eps, dens] : curve)
    out += format_double(eps) + "," + format_double(dens) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// shift-class reports
// ---------------------------------------------------------------------------

inline Json axiom_report_to_json(const AxiomReport& r) {
  return Json{{"axiom_i_ok", r.axiom_i_ok},
              {"axiom_i_constant", r.axiom_i_constant},
              {"axiom_ii_case", r.axiom_ii_case == AxiomReport::Case::increasing_bounded_step
                                    ? "increasing_bounded_step"
                                    : "decreasing_lower_bounded"},
              {"axiom_ii_ok", r.axiom_ii_ok},
              {"axiom_ii_constant", r.axiom_ii_constant},
              {"observed_psi_step", r.observed_psi_step},
              {"sampled_range", Json::array({r.range_lo, r.range_hi})}};
}

inline Json growth_to_json(const GrowthReport& r) {
  return Json{{"min_ratio", r.min_ratio}, {"min_log_ratio", r.min_log_ratio}, {"ok", r.ok}};
}

inline Json partition_to_json(const PartitionResult& r) {
  return Json{{"K", r.K},
              {"T0", r.points.front()},
              {"TK", r.points.back()},
              {"sum_check", r.sum_check},
              {"endpoint_check", r.endpoint_check}};
}

inline std::string partition_csv(const PartitionResult& r, const PhiFunction& phi) {
  std::string out = "k,T_k,step\n";
  for (std::size_t k = 0; k < r.points.size(); ++k) {
    out += std::to_string(k) + "," + format_double(r.points[k]) + ",";
    if (k > 0) out += format_double(1.0 / phi.psi(r.points[k - 1]));
    out += "\n";
  }
  return out;
}

}  // namespace zetashift
