#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "elastica/buckling.hpp"
#include "elastica/closedform.hpp"
#include "elastica/core.hpp"
#include "elastica/disksolver.hpp"
#include "elastica/io.hpp"
#include "elastica/linesolver.hpp"
#include "elastica/parallel.hpp"

namespace elastica::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

enum class Format { Csv, Json };

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw InvalidInput("format must be csv or json");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

fs::path sidecar_path(const fs::path& out) {
  fs::path p = out;
  p.replace_extension(".json");
  if (p == out) p += ".meta.json";
  return p;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw InvalidInput("bad number in list: " + item);
    } catch (const std::logic_error&) {
      throw InvalidInput("bad number in list: " + item);
    }
  }
  return out;
}

struct SweepRange {
  double lo = 0.0, hi = 0.0;
  int n = 0;
};

SweepRange parse_sweep(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw InvalidInput("sweep must be lo:hi:n");
  SweepRange sp;
  try {
    sp.lo = std::stod(parts[0]);
    sp.hi = std::stod(parts[1]);
    sp.n = std::stoi(parts[2]);
  } catch (const std::logic_error&) {
    throw InvalidInput("sweep must be lo:hi:n");
  }
  if (!(sp.lo > 0.0) || !(sp.hi >= sp.lo) || sp.n < 1) throw InvalidInput("sweep needs 0 < lo <= hi and n >= 1");
  return sp;
}

// Appends config-file values as flags unless the flag already appears in argv.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string config_path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) config_path = args[i].substr(9);
  }
  if (config_path.empty()) return args;
  std::ifstream in(config_path);
  if (!in) throw InvalidInput("cannot read config file " + config_path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw InvalidInput("config file is not valid JSON: " + std::string(e.what()));
  }
  if (!cfg.is_object()) throw InvalidInput("config file must hold a JSON object");
  std::set<std::string> present;
  for (const auto& a : args)
    if (a.rfind("--", 0) == 0) present.insert(a.substr(0, a.find('=')));
  for (auto it = cfg.begin(); it != cfg.end(); ++it) {
    std::string key = it.key();
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string flag = "--" + key;
    if (flag == "--config" || present.count(flag)) continue;
    const json& v = it.value();
    std::string text;
    if (v.is_string()) text = v.get<std::string>();
    else if (v.is_number_integer()) text = std::to_string(v.get<long long>());
    else if (v.is_number()) text = format_double(v.get<double>());
    else if (v.is_boolean()) text = v.get<bool>() ? "true" : "false";
    else if (v.is_array()) {
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_number()) throw InvalidInput("config list for " + key + " must be numeric");
        text += (k ? "," : "") + format_double(v[k].get<double>());
      }
    } else {
      throw InvalidInput("unsupported config value for " + key);
    }
    args.push_back(flag);
    args.push_back(text);
  }
  return args;
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty()) return;
  write_atomic(out, content);
}

int cmd_closed_form(const std::string& out) {
  const auto& p = params();
  json j{{"rho", p.rho}, {"r", p.r}, {"mu", p.mu}, {"alpha", p.alpha}, {"a", p.a}, {"theta", p.theta}};
  if (out.empty()) {
    std::cout << j.dump() << "\n";
  } else {
    emit(out, dump(j));
    std::cout << "closed-form theta=" << format_double(p.theta) << " written to " << out << "\n";
  }
  return kExitOk;
}

struct LineArgs {
  double alpha = 0.0;
  int grid_n = 2001;
  double domain_r = 4.0;
  int max_iters = 5000;
  std::string out;
  std::string format = "csv";
};

int cmd_line_solve(const LineArgs& a) {
  const Format fmt = parse_format(a.format);
  LineSolveConfig cfg;
  cfg.n = a.grid_n;
  cfg.domain_radius = a.domain_r;
  cfg.max_iters = a.max_iters;
  if (!(a.alpha >= 0.0) || !std::isfinite(a.alpha)) throw InvalidInput("alpha must be nonnegative");
  const SolveReport rep = a.alpha == 0.0 ? minimize_theta(cfg) : minimize_theta_alpha(a.alpha, cfg);
  json meta{{"theta_est", rep.objective},
            {"alpha", a.alpha},
            {"iterations", rep.iterations},
            {"converged", rep.converged},
            {"residuals",
             {{"length_constraint", rep.length_constraint_residual},
              {"positivity_violation", rep.positivity_violation},
              {"projected_gradient", rep.grad_norm}}}};
  if (!a.out.empty()) {
    if (fmt == Format::Csv) {
      emit(a.out, csv_table({"x", "phi"}, {rep.minimizer.nodes(), rep.minimizer.values}));
      emit(sidecar_path(a.out).string(), dump(meta));
    } else {
      json j = meta;
      j["x"] = vec_json(rep.minimizer.nodes());
      j["phi"] = vec_json(rep.minimizer.values);
      emit(a.out, dump(j));
    }
  }
  std::cout << "line-solve alpha=" << format_double(a.alpha) << " theta_est=" << format_double(rep.objective)
            << " iterations=" << rep.iterations << " converged=" << (rep.converged ? "true" : "false") << "\n";
  if (!rep.converged) {
    std::cerr << "line solve did not converge: " << rep.message << "\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

struct DiskArgs {
  std::string deltas = "1e-4,3e-4,1e-3,3e-3,1e-2";
  int grid_n = 2048;
  std::string out;
  std::string format = "csv";
};

int cmd_disk_sweep(const DiskArgs& a, int jobs) {
  const Format fmt = parse_format(a.format);
  DiskSolveConfig cfg;
  cfg.n = a.grid_n;
  cfg.validate();
  const SweepResult res = scaling_sweep(parse_list(a.deltas), cfg, jobs);
  if (!a.out.empty()) {
    if (fmt == Format::Csv) {
      const auto k = static_cast<Eigen::Index>(res.rows.size());
      std::vector<Eigen::VectorXd> cols(6, Eigen::VectorXd(k));
      for (Eigen::Index i = 0; i < k; ++i) {
        const SweepRow& r = res.rows[i];
        cols[0](i) = r.delta;
        cols[1](i) = r.w_min;
        cols[2](i) = r.excess;
        cols[3](i) = r.ratio;
        cols[4](i) = r.iterations;
        cols[5](i) = r.length_residual;
      }
      emit(a.out, csv_table({"delta", "w_min", "excess", "ratio", "iterations", "length_residual"}, cols));
    } else {
      json rows = json::array();
      for (const auto& r : res.rows)
        rows.push_back({{"delta", r.delta},
                        {"w_min", r.w_min},
                        {"excess", r.excess},
                        {"ratio", r.ratio},
                        {"iterations", r.iterations},
                        {"length_residual", r.length_residual}});
      emit(a.out, dump({{"rows", rows}, {"fit", {{"exponent", res.fit.exponent}, {"prefactor", res.fit.prefactor}}}}));
    }
  }
  std::cout << "disk-sweep points=" << res.rows.size() << " exponent=" << format_double(res.fit.exponent)
            << " prefactor=" << format_double(res.fit.prefactor) << "\n";
  return kExitOk;
}

struct ConstructArgs {
  double eta = 0.05;
  int m = 3;
  int samples = 2048;
  double length = 100.0;
  double c = 2.0;
  double spacing = 0.005;
  double delta = 1e-3;
  int grid_n = 2048;
  std::string out;
  std::string format = "csv";
};

int write_curve(const std::string& kind, const SampledCurve& curve, const Eigen::VectorXd& s, double length,
                double energy, const ConstructArgs& a, json extra) {
  const Format fmt = parse_format(a.format);
  json meta = std::move(extra);
  meta["length"] = length;
  meta["energy"] = energy;
  if (!a.out.empty()) {
    std::vector<std::string> header{"s", "x", "y"};
    std::vector<Eigen::VectorXd> cols{s, curve.points.col(0), curve.points.col(1)};
    if (curve.dim == 3) {
      header.push_back("z");
      cols.push_back(curve.points.col(2));
    }
    if (fmt == Format::Csv) {
      emit(a.out, csv_table(header, cols));
      emit(sidecar_path(a.out).string(), dump(meta));
    } else {
      json j = meta;
      for (std::size_t k = 0; k < header.size(); ++k) j[header[k]] = vec_json(cols[k]);
      emit(a.out, dump(j));
    }
  }
  std::cout << "construct " << kind << " length=" << format_double(length) << " energy=" << format_double(energy)
            << "\n";
  return kExitOk;
}

Eigen::VectorXd periodic_parameter(int n) {
  return Eigen::VectorXd::LinSpaced(n, 0.0, 2.0 * std::numbers::pi * (n - 1) / n);
}

int cmd_construct_helix(const ConstructArgs& a) {
  const SampledCurve c = helix_construction(a.eta, a.m, a.samples);
  const auto [L, W] = curve_length_energy(c);
  return write_curve("helix", c, periodic_parameter(c.n()), L, W, a, {{"eta", a.eta}, {"m", a.m}});
}

int cmd_construct_spiral(const ConstructArgs& a) {
  const SpiralResult r = spiral_construction(a.length, a.c, a.spacing);
  return write_curve("spiral", r.curve, r.arclength, r.length, r.energy, a,
                     {{"c", a.c}, {"windings", r.windings}, {"rho_outer", r.rho_outer}});
}

int cmd_construct_bump(const ConstructArgs& a) {
  const auto& p = params();
  const BumpResult b =
      bump_construction([](double x) { return eval_minimizer(x, 0); }, p.r, a.delta, a.grid_n);
  const SampledCurve c = radial_curve(b.profile);
  return write_curve("bump", c, periodic_parameter(c.n()), radial_length(b.profile), radial_energy(b.profile), a,
                     {{"delta", a.delta}, {"rho", b.rho}});
}

struct BifArgs {
  double chi_h = 1.0;
  double c_stretch = 1.0;
  double r_o = 1.0;
  double h = 0.01;
  double alpha = 0.0;
  double delta = 0.0;
  std::string sweep_h;
  std::string out;
};

int cmd_bifurcation(const BifArgs& a) {
  BucklingInput in;
  in.chi_H = a.chi_h;
  in.c_stretch = a.c_stretch;
  in.r_o = a.r_o;
  in.h = a.h;
  in.alpha_adh = a.alpha;
  in.delta = a.delta;
  in.validate();
  if (!(a.delta > 0.0)) throw InvalidInput("delta must be positive");
  if (!a.sweep_h.empty()) {
    const SweepRange sp = parse_sweep(a.sweep_h);
    std::ostringstream os;
    os << "h,delta_crit,regime_at_delta\n";
    for (int i = 0; i < sp.n; ++i) {
      BucklingInput q = in;
      q.h = sp.n == 1 ? sp.lo : sp.lo * std::pow(sp.hi / sp.lo, static_cast<double>(i) / (sp.n - 1));
      const BucklingOutcome o = decide(q);
      os << format_double(q.h) << "," << format_double(o.delta_crit) << "," << to_string(o.regime) << "\n";
    }
    emit(a.out, os.str());
    if (a.out.empty()) std::cout << os.str();
    std::cout << "bifurcation sweep points=" << sp.n << "\n";
    return kExitOk;
  }
  for (const auto& w : buckling_warnings(in)) std::cerr << "warning: " << w << "\n";
  const BucklingOutcome o = decide(in);
  json j{{"lambda", o.lambda},
         {"lambda0", lambda_critical()},
         {"regime", to_string(o.regime)},
         {"t_star", o.t_star},
         {"delta_crit", o.delta_crit}};
  if (a.out.empty()) {
    std::cout << j.dump() << "\n";
  } else {
    emit(a.out, dump(j));
    std::cout << "bifurcation regime=" << to_string(o.regime) << " lambda=" << format_double(o.lambda) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, int jobs) {
  if (!is_suite(suite)) throw InvalidInput("unknown suite: " + suite);
  const std::vector<Check> checks = run_suite(suite, jobs);
  int failed = 0;
  for (const auto& c : checks) {
    const char* tag = c.informational ? "INFO" : (c.passed ? "PASS" : "FAIL");
    std::cout << tag << "  " << c.name;
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
    std::cout << "\n";
    if (!c.informational && !c.passed) ++failed;
  }
  std::cout << "verify suite=" << suite << " checks=" << checks.size() << " failed=" << failed << "\n";
  return failed == 0 ? kExitOk : kExitNonConvergence;
}

}  // namespace

int run(const std::vector<std::string>& raw) {
  CLI::App app{"Confined elastica toolkit"};
  app.name("elastica");
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  std::string config;
  int jobs = 0;
  app.add_option("--config", config, "JSON file whose keys mirror the flags");
  app.add_option("--jobs", jobs, "Worker threads (default: ELASTICA_JOBS or core count)")->check(CLI::NonNegativeNumber);

  std::string out, format = "csv";
  auto* closed = app.add_subcommand("closed-form", "Print the closed-form parameter table as JSON");
  closed->add_option("--out", out);

  LineArgs line;
  auto* ls = app.add_subcommand("line-solve", "Minimise the line problem numerically");
  ls->add_option("--alpha", line.alpha, "Delamination weight");
  ls->add_option("--grid-n", line.grid_n, "Grid nodes (odd)");
  ls->add_option("--domain-r", line.domain_r, "Half-width of the computational domain");
  ls->add_option("--max-iters", line.max_iters);
  ls->add_option("--out", line.out);
  ls->add_option("--format", line.format)->check(CLI::IsMember({"csv", "json"}));

  DiskArgs disk;
  auto* ds = app.add_subcommand("disk-sweep", "Minimise in the unit disk over a list of excess lengths");
  ds->add_option("--deltas", disk.deltas, "Comma-separated excess lengths");
  ds->add_option("--grid-n", disk.grid_n, "Periodic grid nodes");
  ds->add_option("--out", disk.out);
  ds->add_option("--format", disk.format)->check(CLI::IsMember({"csv", "json"}));

  ConstructArgs con;
  auto* cs = app.add_subcommand("construct", "Evaluate an explicit competitor curve");
  cs->require_subcommand(1);
  cs->fallthrough();
  auto* helix = cs->add_subcommand("helix", "Out-of-plane perturbation of the circle");
  helix->add_option("--eta", con.eta);
  helix->add_option("--m", con.m);
  helix->add_option("--samples", con.samples);
  auto* spiral = cs->add_subcommand("spiral", "Doubled spiral for large lengths");
  spiral->add_option("--length", con.length);
  spiral->add_option("--c", con.c);
  spiral->add_option("--spacing", con.spacing);
  auto* bump = cs->add_subcommand("bump", "Rescaled minimiser glued into the circle");
  bump->add_option("--delta", con.delta);
  bump->add_option("--grid-n", con.grid_n);
  for (auto* sub : {helix, spiral, bump}) {
    sub->fallthrough();
    sub->add_option("--out", con.out);
    sub->add_option("--format", con.format)->check(CLI::IsMember({"csv", "json"}));
  }

  BifArgs bif;
  auto* bf = app.add_subcommand("bifurcation", "Buckling decision for the reduced shell model");
  bf->add_option("--chi-h", bif.chi_h);
  bf->add_option("--c-stretch", bif.c_stretch);
  bf->add_option("--r-o", bif.r_o);
  bf->add_option("--h", bif.h);
  bf->add_option("--alpha", bif.alpha);
  bf->add_option("--delta", bif.delta);
  bf->add_option("--sweep-h", bif.sweep_h, "Thickness sweep lo:hi:n (log-spaced)");
  bf->add_option("--out", bif.out);

  std::string suite = "all";
  auto* vf = app.add_subcommand("verify", "Run an invariant suite");
  vf->add_option("--suite", suite, "scaling|closed-form|line|disk|buckling|all");

  try {
    std::vector<std::string> args = merge_config(raw);
    std::vector<std::string> rev(args.rbegin(), args.rend() - 1);
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return kExitInvalid;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  }

  if (jobs == 0) jobs = default_jobs();
  try {
    if (*closed) return cmd_closed_form(out);
    if (*ls) return cmd_line_solve(line);
    if (*ds) return cmd_disk_sweep(disk, jobs);
    if (*helix) return cmd_construct_helix(con);
    if (*spiral) return cmd_construct_spiral(con);
    if (*bump) return cmd_construct_bump(con);
    if (*bf) return cmd_bifurcation(bif);
    if (*vf) return cmd_verify(suite, jobs);
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const NonConvergence& e) {
    std::cerr << "solver failed: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
  std::cerr << app.help();
  return kExitInvalid;
}

int run(int argc, char** argv) { return run(std::vector<std::string>(argv, argv + argc)); }

}  // namespace elastica::cli
