#include "s2kit/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "s2kit/admissibility.hpp"
#include "s2kit/analysis.hpp"
#include "s2kit/campaign.hpp"
#include "s2kit/error.hpp"
#include "s2kit/grid2d.hpp"
#include "s2kit/solution_io.hpp"
#include "s2kit/suites.hpp"

namespace s2kit {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kReportSchema = "s2kit.report/1";
constexpr std::size_t kMaxRecordRows = 100000;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::filesystem::path out_dir(const RunConfig& cfg) {
  std::filesystem::path p(cfg.out);
  std::filesystem::create_directories(p);
  return p;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

json report_header(const RunConfig& cfg, const std::string& command) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  json c = json::object();
  for (const auto& [k, v] : cfg.as_map()) c[k] = v;
  j["config"] = c;
  return j;
}

json to_json(const PrincipleVerdict& v) {
  return {{"mode", to_string(v.mode)},
          {"interior_extreme", {{"value", v.interior.value}, {"location", v.interior.location}}},
          {"boundary_extreme", {{"value", v.boundary.value}, {"location", v.boundary.location}}},
          {"margin", v.margin},
          {"tol_margin", v.tol_margin},
          {"critical_excess", v.critical_excess},
          {"holds", v.holds},
          {"distance_of_argextreme_to_boundary", v.distance_of_argextreme_to_boundary}};
}

json to_json(const ConvexityReport& c) {
  return {{"points", c.points},
          {"min_eigenvalue", c.min_eigenvalue},
          {"min_scaled_eigenvalue", c.min_scaled_eigenvalue},
          {"convex", c.convex}};
}

json to_json(const BoundsReport& b) {
  return {{"application", b.application},
          {"transform", b.transform},
          {"convexity", to_json(b.convexity)},
          {"hypothesis_met", b.hypothesis_met},
          {"reason", b.reason},
          {"u_min", b.u_min},
          {"lhs", b.lhs},
          {"lhs_gamma_half", b.lhs_gamma_half},
          {"lhs_closed_form", b.lhs_closed_form},
          {"rhs", b.rhs},
          {"slack", b.slack},
          {"slack_gamma_half", b.slack_gamma_half},
          {"pointwise_min_slack", b.pointwise_min_slack},
          {"pointwise_min_slack_gamma_half", b.pointwise_min_slack_gamma_half},
          {"holds", b.holds}};
}

struct Solved {
  Solution solution;
  SourceTerm f;
  std::optional<EigenResult> eigen;
};

Solved obtain_solution(const RunConfig& cfg, const SourceTerm& f) {
  if (!cfg.solution.empty()) {
    Solution s = load_solution(cfg.solution);
    const std::string src = std::visit([](const auto& x) { return x.source; }, s);
    return {std::move(s), SourceTerm::parse(src), std::nullopt};
  }
  if (cfg.mode == "eigen") {
    EigenResult e = solve_eigen_radial(cfg.dim, cfg.radius, cfg.solver);
    const SourceTerm ef = SourceTerm::eigen(e.lambda);
    e.profile.source = ef.describe();
    RadialProfile prof = e.profile;
    return {std::move(prof), ef, std::move(e)};
  }
  if (cfg.mode == "grid2d") return {solve_grid2d(DomainSpec::parse(cfg.domain), f, cfg.solver), f, std::nullopt};
  return {solve_radial(cfg.dim, cfg.radius, f, cfg.solver), f, std::nullopt};
}

SampledSolution sampled(const Solution& s) {
  return std::visit([](const auto& x) { return sample_solution(x); }, s);
}

std::string plot_data(const Solution& s) {
  std::string text;
  if (const auto* p = std::get_if<RadialProfile>(&s)) {
    text = "# r u du/dr\n";
    for (std::size_t j = 0; j < p->size(); ++j) text += num(p->r[j]) + " " + num(p->u[j]) + " " + num(p->up[j]) + "\n";
    return text;
  }
  const auto& g = std::get<ScalarField2D>(s);
  text = "# x y u\n";
  for (std::size_t k = 0; k < g.u.size(); ++k) {
    const auto& nd = g.mask->nodes()[k];
    text += num(nd.pos[0]) + " " + num(nd.pos[1]) + " " + num(g.u[k]) + "\n";
  }
  return text;
}

}  // namespace

int cmd_ineq(const RunConfig& cfg, std::ostream& log) {
  const SampleKind kind = parse_sample_kind(cfg.sign);
  const bool keep = cfg.count * cfg.dims.size() <= kMaxRecordRows;
  const auto t0 = std::chrono::steady_clock::now();
  const CampaignReport rep = run_inequality_campaign(cfg.seed, cfg.dims, cfg.count, kind, keep);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto dir = out_dir(cfg);

  json j = report_header(cfg, "ineq");
  j["kind"] = to_string(kind);
  j["records_written"] = keep;
  json dims = json::array();
  for (const DimSummary& d : rep.dims) {
    json e = {{"dim", d.dim},
              {"count", d.count},
              {"min_scaled_residual", d.min_scaled_residual},
              {"max_scaled_residual", d.max_scaled_residual},
              {"max_scaled_discrepancy", d.max_scaled_discrepancy},
              {"violations", d.violations}};
    e["first_violation_seed"] = d.first_violation_seed ? json(*d.first_violation_seed) : json(nullptr);
    dims.push_back(e);
  }
  j["dims"] = dims;
  j["passed"] = rep.passed();
  write_text(dir / "ineq_summary.json", j.dump(2) + "\n");

  if (keep) {
    std::string csv = "seed,dim,kind,lhs,rhs,residual_direct,residual_closed,scale,passes\n";
    for (const CampaignRecord& r : rep.records)
      csv += std::to_string(r.seed) + "," + std::to_string(r.dim) + "," + to_string(r.kind) + "," +
             num(r.record.lhs) + "," + num(r.record.rhs) + "," + num(r.record.residual_direct) + "," +
             num(r.record.residual_closed) + "," + num(r.record.scale) + "," +
             (sample_passes(r.record, r.dim, r.kind) ? "true" : "false") + "\n";
    write_text(dir / "ineq_records.csv", csv);
  }

  for (const DimSummary& d : rep.dims) {
    char line[200];
    std::snprintf(line, sizeof line, "dim %d  n=%zu  scaled residual [%.3e, %.3e]  closed-form gap %.3e  violations %zu",
                  d.dim, d.count, d.min_scaled_residual, d.max_scaled_residual, d.max_scaled_discrepancy,
                  d.violations);
    log << line << '\n';
    if (d.first_violation_seed) log << "  offending seed " << *d.first_violation_seed << '\n';
  }
  log << (rep.passed() ? "all samples pass" : "VIOLATIONS found") << " (" << secs << " s)\n";
  return rep.passed() ? kExitOk : kExitFailure;
}

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
  const SourceTerm f = SourceTerm::parse(cfg.source);
  Solved s = obtain_solution(cfg, f);
  const auto dir = out_dir(cfg);
  save_solution((dir / "solution.txt").string(), s.solution);
  json summary = json::parse(solution_summary_json(s.solution, cfg.solver));
  json j = report_header(cfg, "solve");
  j["summary"] = summary;
  if (s.eigen) {
    j["eigen"] = {{"lambda", s.eigen->lambda}, {"iterations", s.eigen->iterations}, {"residual", s.eigen->residual}};
  }
  write_text(dir / "summary.json", j.dump(2) + "\n");
  write_text(dir / "solution.dat", plot_data(s.solution));

  char line[256];
  std::snprintf(line, sizeof line, "u_min = %.10f\nboundary |grad u| in [%.10f, %.10f]\n",
                summary["u_min"].get<double>(), summary["boundary_gradient_min"].get<double>(),
                summary["boundary_gradient_max"].get<double>());
  log << line;
  const auto& adm = summary["admissibility"];
  std::snprintf(line, sizeof line, "admissibility: min S1 %.4e, min S2 %.4e, min cofactor eigenvalue %.4e (%s)\n",
                adm["min_s1"].get<double>(), adm["min_s2"].get<double>(),
                adm["min_cofactor_eigenvalue"].get<double>(), adm["admissible"].get<bool>() ? "admissible" : "NOT admissible");
  log << line;
  if (const auto* g = std::get_if<ScalarField2D>(&s.solution)) {
    const int c = g->mask->node_at(0, 0);
    if (c >= 0) log << "u(0,0) = " << num(g->u[c]) << '\n';
  }
  if (s.eigen) {
    std::snprintf(line, sizeof line, "lambda_1 = %.12f  (iterations %d, eigen residual %.3e)\n", s.eigen->lambda,
                  s.eigen->iterations, s.eigen->residual);
    log << line;
    if (!(s.eigen->residual <= 1e-6)) return kExitFailure;
  }
  return adm["admissible"].get<bool>() ? kExitOk : kExitFailure;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
  const auto dir = out_dir(cfg);
  json j = report_header(cfg, "verify");
  const Extremum mode = cfg.principle == "max" ? Extremum::max : Extremum::min;
  const std::vector<double> gammas = !cfg.gammas.empty() ? cfg.gammas
                                     : cfg.app > 0       ? std::vector<double>{1.0}
                                                         : std::vector<double>{0.5};
  auto skipped = [&](const std::string& reason) {
    CaseRow r;
    r.case_id = "verify";
    r.domain = cfg.mode == "grid2d" ? cfg.domain : "ball:" + std::to_string(cfg.dim) + ":" + num(cfg.radius);
    r.source = cfg.source;
    r.mode = to_string(mode);
    r.note = "skipped: " + reason;
    r.margin = r.tol_margin = r.slack = std::nan("");
    write_text(dir / "verify.csv", csv_header() + "\n" + to_csv(r) + "\n");
    j["skipped"] = reason;
    write_text(dir / "verify.json", j.dump(2) + "\n");
    log << "skipped: " << reason << '\n';
    return kExitHypothesis;
  };

  // source implied by the application
  std::string source = cfg.source;
  RunConfig run = cfg;
  if (cfg.app == 3) source = "power:" + num(cfg.lambda) + "," + num(cfg.p);
  if (cfg.app == 2 && cfg.solution.empty()) run.mode = "eigen";
  std::optional<Transform> tr;
  try {
    if (cfg.app > 0) tr = transform_preset(cfg.app, cfg.p);
  } catch (const HypothesisError& e) {
    return skipped(e.what());
  }

  const Solved s = obtain_solution(run, SourceTerm::parse(source));
  const SourceTerm& f = s.f;
  if (cfg.app == 1 && f.preset() != SourceTerm::Preset::constant) throw InputError("application 1 needs a constant source");
  const SampledSolution sol = sampled(s.solution);
  const AdmissibilityReport adm = std::visit([](const auto& x) { return admissibility_report(x); }, s.solution);
  if (!adm.admissible) return skipped("solution is not admissible: " + adm.reason);

  if (mode == Extremum::min && !f.nonincreasing()) return skipped("minimum principle needs f' <= 0, source " + f.describe() + " increases");
  if (mode == Extremum::max && !f.nondecreasing()) return skipped("maximum principle needs f' >= 0, source " + f.describe() + " decreases");
  if (!tr && mode == Extremum::min) {
    tr = find_convexifying_transform(sol);
    if (!tr) return skipped("no increasing transform among identity, -sqrt(-t), -log(-t) makes U(u) convex");
  }
  if (tr) {
    const ConvexityReport conv = convexity_scan(sol.jets, *tr);
    j["transform"] = tr->name();
    j["convexity"] = to_json(conv);
    if (!conv.convex) return skipped("U(u) with U = " + tr->name() + " is not convex on the solution");
  }

  std::optional<BoundsReport> bounds;
  if (cfg.app > 0) {
    bounds = bounds_report(sol, f, cfg.app);
    j["bounds"] = to_json(*bounds);
    if (!bounds->hypothesis_met) return skipped(bounds->reason);
  }

  std::vector<CaseRow> rows;
  json verdicts = json::array();
  bool all = true;
  std::string plot = "# x";
  for (int i = 1; i < sol.dim; ++i) plot += " x" + std::to_string(i);
  plot += " boundary";
  std::vector<PhiField> fields;
  for (double g : gammas) {
    const PhiField base = pfunction_field(sol, f, {cfg.alphas.front(), g});
    for (double a : cfg.alphas) {
      PhiField phi = base.with_alpha(a);
      const PrincipleVerdict v = verify_principle(phi, mode, default_tol_margin(phi));
      json e = to_json(v);
      e["alpha"] = a;
      e["gamma"] = g;
      verdicts.push_back(e);
      CaseRow r;
      r.case_id = "verify";
      r.domain = sol.domain;
      r.source = f.describe();
      r.alpha = a;
      r.gamma = g;
      r.mode = to_string(mode);
      r.margin = v.margin;
      r.tol_margin = v.tol_margin;
      r.slack = bounds ? (g == 1.0 ? bounds->slack : bounds->slack_gamma_half) : std::nan("");
      r.holds = v.holds && (!bounds || bounds->holds);
      r.note = tr ? "U = " + tr->name() : "";
      all = all && r.holds;
      rows.push_back(r);
      plot += " phi[a=" + num(a) + ",g=" + num(g) + "]";
      fields.push_back(std::move(phi));
      char line[256];
      std::snprintf(line, sizeof line, "alpha %-6g gamma %-4g %s principle: margin %+.6e (tol %.2e), at the critical point %+.6e  %s\n",
                    a, g, to_string(mode).c_str(), v.margin, v.tol_margin, v.critical_excess, v.holds ? "holds" : "FAILS");
      log << line;
    }
  }
  j["verdicts"] = verdicts;
  j["all_hold"] = all;
  if (bounds) {
    char line[256];
    std::snprintf(line, sizeof line, "bound (application %d): lhs %.10f  rhs %.10f  slack %.10f  pointwise min slack %.3e\n",
                  bounds->application, bounds->lhs, bounds->rhs, bounds->slack, bounds->pointwise_min_slack);
    log << line;
  }

  std::string csv = csv_header() + "\n";
  for (const auto& r : rows) csv += to_csv(r) + "\n";
  write_text(dir / "verify.csv", csv);
  write_text(dir / "verify.json", j.dump(2) + "\n");
  plot += "\n";
  if (!fields.empty()) {
    for (std::size_t k = 0; k < fields.front().samples.size(); ++k) {
      const auto& smp = fields.front().samples[k];
      for (double c : smp.x) plot += num(c) + " ";
      plot += smp.boundary ? "1" : "0";
      for (const auto& fl : fields) plot += " " + num(fl.samples[k].value);
      plot += "\n";
    }
  }
  write_text(dir / "phi.dat", plot);
  log << (all ? "all verdicts hold" : "some verdicts FAIL") << '\n';
  return all ? kExitOk : kExitFailure;
}

int cmd_identity_scan(const RunConfig& cfg, std::ostream& log) {
  const IdentityScanReport rep = run_identity_scan(cfg.seed, cfg.count);
  json j = report_header(cfg, "identity-scan");
  j["fields"] = rep.fields;
  j["max_scaled_euler_gap"] = rep.max_scaled_euler_gap;
  j["convex_points"] = rep.convex_points;
  j["min_scaled_philippin_safoui_gap"] = rep.min_scaled_ps_gap;
  j["h2_probes"] = rep.h2_probes;
  j["h2_fit"] = {{"model", "H2 = c |grad u|^k S2(kappa)"},
                 {"exponent_k", rep.h2_fit_exponent},
                 {"coefficient_c", rep.h2_fit_coefficient},
                 {"residual", rep.h2_fit_residual},
                 {"unit_factor_residual", rep.h2_unit_factor_residual}};
  j["max_h1_gap"] = rep.max_h1_gap;
  j["passed"] = rep.passed();
  write_text(out_dir(cfg) / "identity_scan.json", j.dump(2) + "\n");
  char line[400];
  std::snprintf(line, sizeof line,
                "fields %zu  max Euler gap %.3e\nconvex points %zu  min Philippin-Safoui gap %.3e\n"
                "H2 fit over %zu radial probes: H2 = %.10f |grad u|^%.10f S2(kappa), residual %.3e\n",
                rep.fields, rep.max_scaled_euler_gap, rep.convex_points, rep.min_scaled_ps_gap, rep.h2_probes,
                rep.h2_fit_coefficient, rep.h2_fit_exponent, rep.h2_fit_residual);
  log << line;
  return rep.passed() ? kExitOk : kExitFailure;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Numerical checks for 2-Hessian equations: matrix inequality campaigns, solvers, P-function principles"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::string> given;
  struct Bound {
    CLI::App* sub;
    CLI::Option* opt;
    std::string key;
  };
  std::vector<Bound> bound;

  auto add = [&](CLI::App* sub, const std::string& flag, const std::string& key, const std::string& help) {
    bound.push_back({sub, sub->add_option(flag, given[sub->get_name() + "/" + key], help), key});
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value configuration file");
    add(sub, "--seed", "seed", "RNG seed");
    add(sub, "--out", "out", "output directory");
  };
  auto problem = [&](CLI::App* sub) {
    auto* radial = sub->add_flag("--radial", "radial problem on a ball");
    auto* grid = sub->add_flag("--grid2d", "2D grid problem on a convex domain");
    auto* eigen = sub->add_flag("--eigen", "radial eigenvalue problem S2(D^2u) = lambda u^2");
    radial->excludes(grid)->excludes(eigen);
    grid->excludes(eigen);
    bound.push_back({sub, radial, "mode=radial"});
    bound.push_back({sub, grid, "mode=grid2d"});
    bound.push_back({sub, eigen, "mode=eigen"});
    add(sub, "--dim", "dim", "dimension of the ball");
    add(sub, "--radius", "radius", "radius of the ball");
    add(sub, "--domain", "domain", "disk:R, ellipse:a,b, polygon:x,y;...");
    add(sub, "--f", "source", "const:c, eigen:l, power:l,p, expdec[:k], expinc[:k]");
    add(sub, "--h", "h", "grid spacing");
    add(sub, "--nodes", "radial_nodes", "radial intervals (even)");
    add(sub, "--tol", "tolerance", "convergence tolerance");
    add(sub, "--max-iter", "max_iterations", "iteration cap");
    add(sub, "--damping", "damping", "initial Newton step fraction");
    add(sub, "--solution", "solution", "solution file to reuse instead of solving");
  };

  auto* ineq = app.add_subcommand("ineq", "seeded campaign over the sharp matrix inequality");
  common(ineq);
  add(ineq, "--dims", "dims", "dimensions, e.g. 2..8 or 3 or 2,4");
  add(ineq, "--count", "count", "samples per dimension");
  add(ineq, "--sign", "sign", "positive | negative | indefinite");

  auto* solve = app.add_subcommand("solve", "solve a Dirichlet problem and write the solution");
  common(solve);
  problem(solve);

  auto* verify = app.add_subcommand("verify", "P-function principles and a priori bounds on a solved problem");
  common(verify);
  problem(verify);
  add(verify, "--app", "app", "application 1, 2 or 3 (0: principle only)");
  add(verify, "--p", "p", "exponent of application 3");
  add(verify, "--lambda", "lambda", "coefficient of application 3");
  add(verify, "--alpha", "alphas", "comma-separated alpha values");
  add(verify, "--gamma", "gammas", "exponent of f in the P-function: 0.5, 1 or both");
  add(verify, "--principle", "principle", "min | max");

  auto* scan = app.add_subcommand("identity-scan", "pointwise identities over synthetic fields");
  common(scan);
  add(scan, "--count", "count", "number of fields");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitFailure;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
    cfg.command = name;
    if (name == "identity-scan" && config_path.empty()) cfg.count = 200;
    for (const auto& [owner, opt, key] : bound) {
      if (owner != sub || opt->count() == 0) continue;
      const auto eq = key.find('=');
      if (eq != std::string::npos) cfg.set(key.substr(0, eq), key.substr(eq + 1));
      else cfg.set(key, given[name + "/" + key]);
    }
    cfg.validate();
    if (name == "ineq") return cmd_ineq(cfg, std::cout);
    if (name == "solve") return cmd_solve(cfg, std::cout);
    if (name == "verify") return cmd_verify(cfg, std::cout);
    return cmd_identity_scan(cfg, std::cout);
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << '\n';
    return kExitHypothesis;
  } catch (const SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const SourceError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace s2kit
