// zetashift: exact exponent-pair calculus and a numerical zeta laboratory for
// short-interval and shifted universality experiments.

#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetashift/serialize.hpp"

namespace zs = zetashift;

namespace {

// --config files are JSON mirroring the flag tree, e.g.
// {"pairs": {"optimize": {"sigma": "1/2", "depth": 6}}}
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}\n"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    nlohmann::json root = nlohmann::json::parse(input);
    std::vector<CLI::ConfigItem> out;
    walk(root, {}, out);
    return out;
  }

 private:
  static void walk(const nlohmann::json& node, std::vector<std::string> parents,
                   std::vector<CLI::ConfigItem>& out) {
    for (const auto& [key, val] : node.items()) {
      if (val.is_object()) {
        auto deeper = parents;
        deeper.push_back(key);
        walk(val, deeper, out);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (val.is_array())
        for (const auto& e : val) item.inputs.push_back(scalar(e));
      else
        item.inputs.push_back(scalar(val));
      out.push_back(std::move(item));
    }
  }
  static std::string scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }
};

std::vector<double> parse_double_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw zs::validation_error(std::string(what) + ": empty coefficient");
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw zs::validation_error(std::string(what) + ": cannot parse '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

// const:1.0 | poly:c0,c1,... | exppoly:c0,c1,...
zs::Target parse_target(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw zs::validation_error("target: expected const:..., poly:... or exppoly:...");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  auto reals = parse_double_list(rest, "target");
  std::vector<std::complex<double>> coeffs(reals.begin(), reals.end());
  if (kind == "const") {
    if (coeffs.size() != 1) throw zs::validation_error("target: const takes one value");
    return zs::Target::constant(coeffs[0]);
  }
  if (kind == "poly") return zs::Target::polynomial(std::move(coeffs));
  if (kind == "exppoly") return zs::Target::exp_polynomial(std::move(coeffs));
  throw zs::validation_error("target: unknown kind '" + kind + "'");
}

// scalar values stop at the next ',' or ';'; the coefficient list runs to the
// end of the spec, so both exppoly:base=2.718,coeffs=0,0,1 and the
// semicolon-separated form parse
std::string keyed_value(const std::string& body, const std::string& key, bool to_end = false) {
  auto pos = body.find(key + "=");
  if (pos == std::string::npos)
    throw zs::validation_error("phi: missing '" + key + "=' in spec");
  pos += key.size() + 1;
  if (to_end) return body.substr(pos);
  auto end = body.find_first_of(",;", pos);
  return body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
}

// exp:RATE | poly:c0,c1,... | exppoly:base=B,coeffs=c0,c1,...
// | doubleexp:alpha=A,beta=B,coeffs=c0,c1,...
zs::PhiFunction parse_phi(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw zs::validation_error("phi: expected kind:parameters");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (kind == "exp") {
    double rate = parse_double_list(rest, "phi").at(0);
    return zs::PhiFunction::exp_poly(std::exp(1.0), {0.0, rate});
  }
  if (kind == "poly") return zs::PhiFunction::polynomial(parse_double_list(rest, "phi"));
  if (kind == "exppoly") {
    double base = std::stod(keyed_value(rest, "base"));
    return zs::PhiFunction::exp_poly(
        base, parse_double_list(keyed_value(rest, "coeffs", true), "phi"));
  }
  if (kind == "doubleexp") {
    double alpha = std::stod(keyed_value(rest, "alpha"));
    double beta = std::stod(keyed_value(rest, "beta"));
    return zs::PhiFunction::double_exp(
        alpha, beta, parse_double_list(keyed_value(rest, "coeffs", true), "phi"));
  }
  throw zs::validation_error("phi: unknown family '" + kind + "'");
}

struct GlobalOpts {
  std::string out_path;
  std::string format = "json";
  std::uint64_t seed = 20230811u;
  int threads = 0;
  std::string payload;

  zs::OutputFormat fmt() const { return zs::parse_format(format); }
  void emit() const {
    if (out_path.empty()) {
      std::cout << payload;
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw zs::validation_error("cannot open output path '" + out_path + "'");
    f << payload;
  }
};

void require_json_only(const GlobalOpts& g, const char* what) {
  if (g.fmt() != zs::OutputFormat::json)
    throw zs::validation_error(std::string(what) + ": only json output is supported");
}

zs::Json pair_report(const zs::ExponentPair& p, const zs::Rational& sigma) {
  zs::Json j = zs::pair_to_json(p);
  j["theta"] = zs::t_exponent(p, sigma).to_string();
  j["log_exp"] = zs::log_exponent(p).to_string();
  j["sigma_bound"] = zs::sigma_bound(p).to_string();
  j["sigma"] = sigma.to_string();
  j["plus_epsilon"] = p.eps_limit;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact exponent-pair calculus and a zeta laboratory for universality experiments"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config mirroring the flag tree");

  GlobalOpts g;
  app.add_option("--out", g.out_path, "write output to this path instead of stdout");
  app.add_option("--format", g.format, "output format: json or csv")->capture_default_str();
  app.add_option("--seed", g.seed, "seed for randomized suites")->capture_default_str();
  app.add_option("--threads", g.threads,
                 "worker threads (0 = ZETASHIFT_THREADS or hardware)")
      ->capture_default_str();

  // ---- pairs ---------------------------------------------------------------
  auto* pairs = app.add_subcommand("pairs", "exact exponent-pair calculus");
  pairs->require_subcommand(1);
  int depth = 6;
  bool named = false;
  std::string sigma_str = "1/2";
  std::string ledger_name;

  auto add_pair_opts = [&](CLI::App* cmd) {
    cmd->add_option("--depth", depth, "A/B word length cap")->capture_default_str();
    cmd->add_flag("--named", named, "include the named literature pairs");
    cmd->add_option("--sigma", sigma_str, "sigma as an exact rational p/q")->capture_default_str();
  };

  auto* pairs_generate = pairs->add_subcommand("generate", "closure of the seeds under A/B words");
  add_pair_opts(pairs_generate);
  pairs_generate->callback([&] {
    zs::PairSet set = zs::generate_pairs(depth, named);
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::pairs_to_json(set.pairs()));
    else
      g.payload = zs::pairs_to_csv(set.pairs(), zs::Rational::parse(sigma_str));
  });

  auto* pairs_hull = pairs->add_subcommand("hull", "lower-left hull of the generated set");
  add_pair_opts(pairs_hull);
  pairs_hull->callback([&] {
    zs::HullPolyline hull = zs::lower_hull(zs::generate_pairs(depth, named));
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::pairs_to_json(hull.vertices));
    else
      g.payload = zs::pairs_to_csv(hull.vertices, zs::Rational::parse(sigma_str));
  });

  auto* pairs_optimize =
      pairs->add_subcommand("optimize", "minimize the T-exponent at a given sigma");
  add_pair_opts(pairs_optimize);
  pairs_optimize->callback([&] {
    require_json_only(g, "pairs optimize");
    zs::Rational sigma = zs::Rational::parse(sigma_str);
    auto [best, theta] = zs::optimize_theta(zs::generate_pairs(depth, named), sigma);
    zs::Json j = pair_report(best, sigma);
    j["theta"] = theta.to_string();
    g.payload = zs::dump_json(j);
  });

  auto* pairs_ledger = pairs->add_subcommand("ledger", "the universality results table");
  pairs_ledger->add_option("--name", ledger_name, "single entry to look up");
  pairs_ledger->callback([&] {
    if (!ledger_name.empty()) {
      require_json_only(g, "pairs ledger --name");
      g.payload = zs::dump_json(zs::ledger_entry_to_json(zs::ledger_lookup(ledger_name)));
      return;
    }
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::ledger_to_json(zs::ledger()));
    else
      g.payload = zs::ledger_to_csv(zs::ledger());
  });

  // ---- zeta ----------------------------------------------------------------
  auto* zeta_cmd = app.add_subcommand("zeta", "complex evaluation and the Perron decomposition");
  zeta_cmd->require_subcommand(1);
  double sigma = 0.75, t_ord = 100.0, big_h = 20.0, sigma0 = 0.5, big_t = 100.0;
  int suite_count = 0;
  zs::EvalConfig cfg;

  auto add_eval_opts = [&](CLI::App* cmd) {
    cmd->add_option("--em-terms", cfg.em_terms, "truncation length multiplier")
        ->capture_default_str();
    cmd->add_option("--em-corrections", cfg.em_corrections, "Bernoulli correction count")
        ->capture_default_str();
  };

  auto* zeta_eval = zeta_cmd->add_subcommand("eval", "zeta(sigma + it)");
  zeta_eval->add_option("--sigma", sigma, "real part")->required();
  zeta_eval->add_option("--t", t_ord, "imaginary part")->required();
  add_eval_opts(zeta_eval);
  zeta_eval->callback([&] {
    require_json_only(g, "zeta eval");
    std::complex<double> v = zs::zeta({sigma, t_ord}, cfg);
    g.payload = zs::dump_json(zs::Json{{"s", zs::complex_to_json({sigma, t_ord})},
                                       {"value", zs::complex_to_json(v)}});
  });

  auto* zeta_decomp =
      zeta_cmd->add_subcommand("decomp", "smoothed-series decomposition residual");
  zeta_decomp->add_option("--sigma", sigma, "real part")->capture_default_str();
  zeta_decomp->add_option("--t", t_ord, "imaginary part")->capture_default_str();
  zeta_decomp->add_option("--H", big_h, "smoothing length")->capture_default_str();
  zeta_decomp->add_option("--sigma0", sigma0, "shifted line")->capture_default_str();
  zeta_decomp->add_option("--T", big_t, "window parameter")->capture_default_str();
  zeta_decomp->add_option("--suite", suite_count,
                          "run this many seeded random configurations instead");
  add_eval_opts(zeta_decomp);
  zeta_decomp->callback([&] {
    require_json_only(g, "zeta decomp");
    if (suite_count > 0) {
      std::mt19937_64 rng(g.seed);
      auto uniform = [&](double lo, double hi) {
        return lo + static_cast<double>(rng() >> 11) * 0x1.0p-53 * (hi - lo);
      };
      zs::Json arr = zs::Json::array();
      double worst = 0.0;
      for (int i = 0; i < suite_count; ++i) {
        double s_sigma = uniform(0.6, 0.9);
        double s_t = uniform(50.0, 500.0);
        double s_h = uniform(10.0, 100.0);
        auto rep = zs::decomposition_check({s_sigma, s_t}, s_h, 0.5, s_t, cfg, g.threads);
        worst = std::max(worst, rep.residual);
        arr.push_back(zs::decomposition_to_json(rep));
      }
      g.payload = zs::dump_json(
          zs::Json{{"seed", g.seed}, {"max_residual", worst}, {"reports", arr}});
      return;
    }
    auto rep = zs::decomposition_check({sigma, t_ord}, big_h, sigma0, big_t, cfg, g.threads);
    g.payload = zs::dump_json(zs::decomposition_to_json(rep));
  });

  auto* zeta_stirling =
      zeta_cmd->add_subcommand("stirling", "empirical constant of the Gamma decay bound");
  zeta_stirling->callback([&] {
    require_json_only(g, "zeta stirling");
    auto [xs, ts] = zs::default_stirling_grid();
    double worst = zs::stirling_check(xs, ts);
    g.payload = zs::dump_json(zs::Json{{"max_constant", worst},
                                       {"x_grid", "0.1..1.0 step 0.1"},
                                       {"t_grid", "1..50 step 1"}});
  });

  // ---- ms ------------------------------------------------------------------
  auto* ms = app.add_subcommand("ms", "short-interval second-moment experiments");
  ms->require_subcommand(1);
  zs::Window window{1000.0, 100.0, 0.05};

  auto add_window_opts = [&](CLI::App* cmd) {
    cmd->add_option("--T", window.T, "interval start")->capture_default_str();
    cmd->add_option("--H", window.H, "interval length")->capture_default_str();
    cmd->add_option("--step", window.step, "quadrature step")->capture_default_str();
  };

  auto* ms_run = ms->add_subcommand("run", "normalized mean square against zeta(2 sigma)");
  ms_run->add_option("--sigma", sigma, "vertical line")->required();
  add_window_opts(ms_run);
  ms_run->callback([&] {
    auto res = zs::mean_square(sigma, window, cfg, g.threads);
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::mean_square_to_json(res));
    else
      g.payload = zs::mean_square_partials_csv(res);
  });

  auto* ms_lemma1 = ms->add_subcommand("lemma1", "two-sided short-interval comparison");
  ms_lemma1->add_option("--sigma", sigma, "target line")->required();
  ms_lemma1->add_option("--sigma0", sigma0, "reference line")->capture_default_str();
  add_window_opts(ms_lemma1);
  ms_lemma1->callback([&] {
    require_json_only(g, "ms lemma1");
    g.payload = zs::dump_json(zs::lemma1_to_json(zs::lemma1_check(sigma, sigma0, window, cfg, g.threads)));
  });

  auto* ms_mv = ms->add_subcommand("mv", "smoothed-series moment vs term-sum majorant");
  ms_mv->add_option("--sigma", sigma, "vertical line")->required();
  ms_mv->add_option("--H", window.H, "smoothing length")->capture_default_str();
  ms_mv->add_option("--T", window.T, "interval start")->capture_default_str();
  ms_mv->callback([&] {
    require_json_only(g, "ms mv");
    g.payload = zs::dump_json(zs::mv_to_json(zs::mv_majorant(sigma, window.H, window.T, cfg, g.threads)));
  });

  // ---- scan ----------------------------------------------------------------
  auto* scan = app.add_subcommand("scan", "shift-density scans on a disk");
  scan->require_subcommand(1);
  double center = 0.75, center_t = 0.0, radius = 0.05, epsilon = 0.75;
  int boundary = 32;
  std::string target_spec = "const:1.0";
  std::string eps_list_str;

  auto add_scan_opts = [&](CLI::App* cmd) {
    cmd->add_option("--center", center, "disk center on the sigma axis")->capture_default_str();
    cmd->add_option("--center-t", center_t, "disk center ordinate")->capture_default_str();
    cmd->add_option("--radius", radius, "disk radius")->capture_default_str();
    cmd->add_option("--target", target_spec, "const:c | poly:c0,c1,... | exppoly:c0,c1,...")
        ->capture_default_str();
    cmd->add_option("--boundary", boundary, "boundary sample count")->capture_default_str();
  };

  auto* scan_run = scan->add_subcommand("run", "density of accepted shifts in a window");
  add_scan_opts(scan_run);
  add_window_opts(scan_run);
  scan_run->add_option("--eps", epsilon, "acceptance threshold")->capture_default_str();
  scan_run->callback([&] {
    zs::DiskDomain disk{center, center_t, radius};
    zs::ScanRun run = zs::scan_interval(disk, parse_target(target_spec), window, epsilon,
                                        boundary, cfg, g.threads);
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::scan_result_to_json(run.result));
    else
      g.payload = zs::scan_samples_csv(run);
  });

  auto* scan_curve = scan->add_subcommand("curve", "density as a function of epsilon");
  add_scan_opts(scan_curve);
  add_window_opts(scan_curve);
  scan_curve->add_option("--eps-list", eps_list_str, "ascending comma-separated thresholds")
      ->required();
  scan_curve->callback([&] {
    zs::DiskDomain disk{center, center_t, radius};
    auto eps_list = parse_double_list(eps_list_str, "eps-list");
    zs::ScanRun run = zs::scan_interval(disk, parse_target(target_spec), window,
                                        eps_list.empty() ? 1.0 : eps_list.back(), boundary, cfg,
                                        g.threads);
    auto curve = zs::density_curve(run, eps_list);
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::density_curve_to_json(curve));
    else
      g.payload = zs::density_curve_csv(curve);
  });

  // ---- phi -----------------------------------------------------------------
  auto* phi_cmd = app.add_subcommand("phi", "shift-class axioms, growth, partitions, scans");
  phi_cmd->require_subcommand(1);
  std::string phi_spec = "exp:1";
  double phi_t = 10.0, growth_c = 1.0;
  int samples = 256;

  auto add_phi_opt = [&](CLI::App* cmd) {
    cmd->add_option("--phi", phi_spec,
                    "exp:rate | poly:c0,c1,... | exppoly:base=B;coeffs=... | "
                    "doubleexp:alpha=A;beta=B;coeffs=...")
        ->capture_default_str();
    cmd->add_option("--T", phi_t, "range start; the range is [T, 2T]")->capture_default_str();
  };

  auto* phi_axioms = phi_cmd->add_subcommand("axioms", "verify the class axioms on [T, 2T]");
  add_phi_opt(phi_axioms);
  phi_axioms->add_option("--samples", samples, "sample count")->capture_default_str();
  phi_axioms->callback([&] {
    require_json_only(g, "phi axioms");
    g.payload = zs::dump_json(zs::axiom_report_to_json(zs::check_axioms(parse_phi(phi_spec), phi_t, samples)));
  });

  auto* phi_growth = phi_cmd->add_subcommand("growth", "the (C+1)-growth inequality");
  add_phi_opt(phi_growth);
  phi_growth->add_option("--C", growth_c, "step multiplier")->capture_default_str();
  phi_growth->add_option("--samples", samples, "sample count")->capture_default_str();
  phi_growth->callback([&] {
    require_json_only(g, "phi growth");
    g.payload = zs::dump_json(zs::growth_to_json(zs::growth_check(parse_phi(phi_spec), phi_t, growth_c, samples)));
  });

  auto* phi_partition = phi_cmd->add_subcommand("partition", "T_k = T_{k-1} + 1/psi(T_{k-1})");
  add_phi_opt(phi_partition);
  phi_partition->callback([&] {
    zs::PhiFunction phi = parse_phi(phi_spec);
    zs::PartitionResult part = zs::build_partition(phi, phi_t);
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::partition_to_json(part));
    else
      g.payload = zs::partition_csv(part, phi);
  });

  auto* phi_scan = phi_cmd->add_subcommand("scan", "density of accepted shifts tau -> phi(tau)");
  add_phi_opt(phi_scan);
  add_scan_opts(phi_scan);
  phi_scan->add_option("--step", window.step, "tau step")->capture_default_str();
  phi_scan->add_option("--eps", epsilon, "acceptance threshold")->capture_default_str();
  phi_scan->callback([&] {
    zs::DiskDomain disk{center, center_t, radius};
    zs::ScanRun run = zs::scan_shifted(parse_phi(phi_spec), disk, parse_target(target_spec),
                                       phi_t, window.step, epsilon, boundary, cfg, g.threads);
    if (g.fmt() == zs::OutputFormat::json)
      g.payload = zs::dump_json(zs::scan_result_to_json(run.result));
    else
      g.payload = zs::scan_samples_csv(run);
  });

  // global flags (--out, --format, --seed, --threads) stay usable after any
  // subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
    for (auto* sub : node->get_subcommands([](CLI::App*) { return true; })) {
      sub->fallthrough();
      enable_fallthrough(sub);
    }
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const zs::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const zs::numeric_range_error& e) {
    std::cerr << "numeric range error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  try {
    g.emit();
  } catch (const zs::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
