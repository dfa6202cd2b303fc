// Command-line front end: verification suites, sweeps, and report emission.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "fracyam/appendix.hpp"
#include "fracyam/bubble.hpp"
#include "fracyam/constants.hpp"
#include "fracyam/energy.hpp"
#include "fracyam/extension_source.hpp"
#include "fracyam/interaction.hpp"
#include "fracyam/minimizer.hpp"
#include "fracyam/suites.hpp"
#include "fracyam/svg.hpp"

namespace {

using namespace fracyam;

struct GlobalOpts {
  std::string config_path;
  std::string out_path;
  std::string format = "text";
  std::uint64_t seed = 42;
  bool fast = false;
  bool plots = false;
};

// flat TOML-style sections: [section] followed by key = value lines
std::map<std::string, std::map<std::string, std::string>> parse_config(
    const std::string& path) {
  std::map<std::string, std::map<std::string, std::string>> cfg;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  std::string line, section = "global";
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad config line: " + line);
    cfg[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

void apply_config(GlobalOpts& g, const CLI::App& app) {
  if (g.config_path.empty()) return;
  auto cfg = parse_config(g.config_path);
  const auto& glob = cfg["global"];
  auto has = [&](const char* k) { return glob.count(k) > 0; };
  if (app.count("--seed") == 0 && has("seed")) g.seed = std::stoull(glob.at("seed"));
  if (app.count("--format") == 0 && has("format")) g.format = glob.at("format");
  if (app.count("--fast") == 0 && has("fast")) g.fast = glob.at("fast") == "true";
  if (app.count("--out") == 0 && has("out")) g.out_path = glob.at("out");
}

int emit_reports(const std::vector<VerificationReport>& reports, const GlobalOpts& g) {
  EmitFormat fmt = EmitFormat::text;
  if (g.format == "json") fmt = EmitFormat::json;
  else if (g.format == "csv") fmt = EmitFormat::csv;
  else if (g.format != "text") {
    std::cerr << "unknown format: " << g.format << "\n";
    return 2;
  }
  if (g.out_path.empty()) {
    emit(reports, fmt, std::cout);
  } else {
    std::ofstream os(g.out_path);
    if (!os) {
      std::cerr << "cannot write: " << g.out_path << "\n";
      return 3;
    }
    emit(reports, fmt, os);
  }
  for (const auto& r : reports)
    if (r.status == CheckStatus::fail) return 1;
  return 0;
}

RunConfig make_run_config(const GlobalOpts& g) {
  RunConfig rc;
  rc.fast = g.fast;
  rc.seed = g.seed;
  rc.plots = g.plots;
  return rc;
}

std::vector<double> parse_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

void write_json(const GlobalOpts& g, const nlohmann::ordered_json& j) {
  if (g.out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(g.out_path);
    os << j.dump(2) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fracyam: numerical verification of the flat-model fractional Yamabe "
      "apparatus"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--config", g.config_path, "config file (TOML-style sections)");
  app.add_option("--out", g.out_path, "output path (default stdout)");
  app.add_option("--format", g.format, "json|csv|text")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_flag("--fast", g.fast, "reduced grids, every check still executed");
  app.add_flag("--plots", g.plots, "emit SVG sweep plots");

  int exit_code = 0;

  // ---- constants: JSON of the named constants
  {
    auto* sc = app.add_subcommand("constants", "evaluate the named constants");
    static int n = 3;
    static double gamma = 0.5;
    sc->add_option("--n", n)->capture_default_str();
    sc->add_option("--gamma", gamma)->capture_default_str();
    sc->callback([&] {
      apply_config(g, app);
      const ConstantSet c = constants(ParamPoint(n, gamma));
      nlohmann::ordered_json j;
      j["d_gamma"] = c.d_gamma;
      j["kappa_gamma"] = c.kappa_gamma;
      j["p_n_gamma"] = c.p_n_gamma;
      j["alpha_n_gamma"] = c.alpha_n_gamma;
      j["S_n_gamma"] = c.S_n_gamma;
      j["Y_sphere"] = c.Y_sphere;
      write_json(g, j);
    });
  }

  // ---- verification suites
  const std::map<std::string, std::string> suite_map = {
      {"verify-bubble", "bubble"},
      {"verify-extension", "extension"},
      {"verify-appendix", "appendix"},
      {"all", "all"}};
  for (const auto& [cmd, suite] : suite_map) {
    auto* sc = app.add_subcommand(cmd, "run the " + suite + " verification suite");
    sc->callback([&, suite = suite] {
      apply_config(g, app);
      auto reports = run_suite(suite, make_run_config(g));
      exit_code = emit_reports(reports, g);
    });
  }

  // ---- c4-scan
  {
    auto* sc = app.add_subcommand(
        "c4-scan", "scan C4 positivity (rational route + spot quadrature)");
    static double n_lo = 8.0, n_hi = 30.0;
    static int steps = 40;
    sc->add_option("--n-range", n_lo, "lower n");
    sc->add_option("--n-range-hi", n_hi, "upper n");
    sc->add_option("--gamma-range", steps, "(steps also apply to gamma)");
    sc->add_option("--steps", steps)->capture_default_str();
    sc->callback([&] {
      apply_config(g, app);
      std::vector<ParamPoint> spots = {ParamPoint(8, 1.2), ParamPoint(9, 1.3),
                                       ParamPoint(12, 1.9)};
      const C4ScanResult res = C4_sign_scan(n_lo, n_hi, steps, steps, spots, g.fast);
      std::ostream* os = &std::cout;
      std::ofstream file;
      if (!g.out_path.empty()) {
        file.open(g.out_path);
        os = &file;
      }
      *os << "n,gamma,c4_quad,i1_plus_i2,status\n";
      for (size_t i = 0; i < spots.size(); ++i) {
        const double ip = I1_rational(spots[i].n(), spots[i].gamma()) +
                          I2_rational(spots[i].n(), spots[i].gamma());
        *os << spots[i].n() << ',' << spots[i].gamma() << ',' << res.c4_spots[i]
            << ',' << ip << ','
            << (res.c4_spots[i] > 0 && ip > 0 ? "pass" : "fail") << '\n';
      }
      exit_code = res.pass ? 0 : 1;
    });
  }

  // ---- self-action sweep
  {
    auto* sc =
        app.add_subcommand("self-action", "glued test-function self-action sweep");
    static int n = 3;
    static double gamma = 0.5, delta = 0.5;
    static std::string eps_csv = "0.0625,0.03125,0.015625";
    sc->add_option("--n", n)->capture_default_str();
    sc->add_option("--gamma", gamma)->capture_default_str();
    sc->add_option("--delta", delta)->capture_default_str();
    sc->add_option("--eps-list", eps_csv)->capture_default_str();
    sc->callback([&] {
      apply_config(g, app);
      const ParamPoint p(n, gamma);
      std::ostream* os = &std::cout;
      std::ofstream file;
      if (!g.out_path.empty()) {
        file.open(g.out_path);
        os = &file;
      }
      *os << "eps,delta,energy,mass,energy_excess_norm,mass_defect_norm\n";
      std::vector<std::pair<double, double>> curve;
      for (double eps : parse_list(eps_csv)) {
        const SelfActionResult r = glued_self_action(p, eps, delta, g.fast);
        *os << eps << ',' << delta << ',' << r.energy << ',' << r.mass << ','
            << r.energy_excess_norm << ',' << r.mass_defect_norm << '\n';
        curve.emplace_back(std::log(eps), r.energy_excess_norm);
      }
      if (g.plots)
        write_svg_plot("self_action_sweep.svg", "self-action excess", {curve});
    });
  }

  // ---- interaction pair sweep
  {
    auto* sc = app.add_subcommand("interaction", "pair interaction sweep (CSV)");
    static int n = 3;
    static double gamma = 0.5, delta = 0.5, d = 0.25;
    static std::string eps_csv = "0.0625,0.03125,0.015625";
    sc->add_option("--n", n)->capture_default_str();
    sc->add_option("--gamma", gamma)->capture_default_str();
    sc->add_option("--delta", delta)->capture_default_str();
    sc->add_option("--pair", d, "center distance")->capture_default_str();
    sc->add_option("--eps-list", eps_csv)->capture_default_str();
    sc->callback([&] {
      apply_config(g, app);
      const ParamPoint p(n, gamma);
      std::ostream* os = &std::cout;
      std::ofstream file;
      if (!g.out_path.empty()) {
        file.open(g.out_path);
        os = &file;
      }
      *os << "eps,eps_ij,epsilon_ij,e_ij,ratio_epsilon,ratio_e\n";
      std::vector<std::pair<double, double>> curve;
      for (double eps : parse_list(eps_csv)) {
        BubblePair pair(p, eps, eps, d, delta);
        const double sep = eps_ij(pair);
        const double ep = epsilon_ij(pair, g.fast);
        const double e = p.regime() == Regime::TypeI ? e_ij_flat(pair, g.fast) : 0.0;
        *os << eps << ',' << sep << ',' << ep << ',' << e << ',' << ep / sep << ','
            << (ep != 0.0 ? e / ep : 0.0) << '\n';
        curve.emplace_back(std::log(eps), ep / sep);
      }
      if (g.plots)
        write_svg_plot("interaction_ratio.svg", "epsilon_ij / eps_ij", {curve});
    });
  }

  // ---- landscape
  {
    auto* sc =
        app.add_subcommand("landscape", "barycenter landscape sweep and C6/C7 fit");
    static double delta = 0.15, radius = 0.5;
    static std::string eps_csv = "0.01875,0.0125,0.009375,0.00625";
    static std::string p_csv = "2,3,4";
    sc->add_option("--delta", delta)->capture_default_str();
    sc->add_option("--radius", radius)->capture_default_str();
    sc->add_option("--eps-list", eps_csv)->capture_default_str();
    sc->add_option("--p", p_csv)->capture_default_str();
    sc->callback([&] {
      apply_config(g, app);
      const ParamPoint p(3, 0.5);
      std::vector<int> ps;
      for (double v : parse_list(p_csv)) ps.push_back(static_cast<int>(v));
      const auto eps_list = parse_list(eps_csv);
      const LandscapeFit fit =
          p_star_estimate(p, radius, delta, eps_list, ps, g.fast);
      nlohmann::ordered_json j;
      j["C6"] = fit.C6;
      j["C7"] = fit.C7;
      j["p_star"] = fit.p_star;
      j["fit_residual"] = fit.fit_residual;
      j["energies"] = fit.energies;
      write_json(g, j);
      exit_code = fit.C6 > 0 && fit.C7 > 0 ? 0 : 1;
    });
  }

  // ---- minimize
  {
    auto* sc = app.add_subcommand("minimize", "trace-energy minimization");
    static int n = 3;
    static double gamma = 0.5, tol = 1e-4;
    static std::string init = "gaussian";
    static std::string profile_csv;
    static int max_iter = 20000;
    sc->add_option("--n", n)->capture_default_str();
    sc->add_option("--gamma", gamma)->capture_default_str();
    sc->add_option("--init", init, "bubble|gaussian|plateau")->capture_default_str();
    sc->add_option("--tol", tol)->capture_default_str();
    sc->add_option("--max-iter", max_iter)->capture_default_str();
    sc->add_option("--profile-csv", profile_csv, "write the final trace profile");
    sc->callback([&] {
      apply_config(g, app);
      const ParamPoint p(n, gamma);
      TraceEnergy::Options opt;
      if (g.fast) {
        opt.panels = 16;
        opt.quad_nodes = 10;
      }
      TraceEnergy f(p, opt);
      std::vector<double> u0;
      if (init == "bubble") u0 = f.bubble_trace();
      else if (init == "gaussian") u0 = f.gaussian_trace();
      else if (init == "plateau") u0 = f.plateau_trace();
      else throw CLI::ValidationError("--init", "unknown init: " + init);
      const MinimizerState st = minimize(f, u0, max_iter, tol);
      const double Y = constants(p).Y_sphere;
      nlohmann::ordered_json j;
      j["final_energy"] = st.energy;
      j["Y_sphere"] = Y;
      j["rel_gap"] = st.energy / Y - 1.0;
      j["iterations"] = st.iteration;
      j["grad_norm"] = st.grad_norm;
      j["clamped"] = st.clamped;
      j["stalled"] = st.stalled;
      write_json(g, j);
      if (!profile_csv.empty()) {
        std::ofstream os(profile_csv);
        os << "r,value\n";
        for (size_t i = 0; i < st.trace.size(); ++i)
          os << f.r_grid()[i] << ',' << st.trace[i] << '\n';
      }
    });
  }

  // ---- integrate
  {
    auto* sc = app.add_subcommand("integrate", "evaluate a named integrand");
    static std::string expr;
    sc->add_option("--expr", expr, "named integrand")->required();
    sc->callback([&] {
      apply_config(g, app);
      const IntegralResult res = run_named_integrand(expr, make_run_config(g));
      nlohmann::ordered_json j;
      j["expr"] = expr;
      j["value"] = res.value;
      j["err_estimate"] = res.err_estimate;
      j["evaluations"] = res.evaluations;
      write_json(g, j);
    });
  }

  // ---- dump-profile
  {
    auto* sc = app.add_subcommand("dump-profile", "sample a bubble extension to CSV");
    static int n = 7;
    static double gamma = 1.5, eps = 1.0;
    static int nr = 120, nx = 80;
    sc->add_option("--n", n)->capture_default_str();
    sc->add_option("--gamma", gamma)->capture_default_str();
    sc->add_option("--eps", eps)->capture_default_str();
    sc->add_option("--nr", nr)->capture_default_str();
    sc->add_option("--nx", nx)->capture_default_str();
    sc->callback([&] {
      apply_config(g, app);
      const ParamPoint p(n, gamma);
      auto src = bubble_source(p, eps, g.fast);
      const double cov = 0.9 * src->coverage_radius();
      auto rg = log_grid(1e-3, std::min(1e3, cov), nr);
      auto xg = log_grid(1e-3, std::min(1e2, cov), nx);
      std::vector<double> xg_full;
      xg_full.push_back(0.0);
      xg_full.insert(xg_full.end(), xg.begin(), xg.end());
      RadialProfile prof(p, rg, xg_full);
      for (size_t ir = 0; ir < rg.size(); ++ir) {
        prof.at(ir, 0) = src->boundary(rg[ir]);
        for (size_t ix = 0; ix < xg.size(); ++ix)
          prof.at(ir, ix + 1) = src->fields(rg[ir], xg[ix], kFieldW).W;
      }
      if (g.out_path.empty()) {
        prof.write_csv(std::cout);
      } else {
        std::ofstream os(g.out_path);
        prof.write_csv(os);
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
