#include "s2kit/solution_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include "json.hpp"
#include <ostream>
#include <sstream>

#include "s2kit/admissibility.hpp"
#include "s2kit/error.hpp"

namespace s2kit {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("solution file: bad number '" + s + "'");
  }
  if (used != s.size()) throw InputError("solution file: bad number '" + s + "'");
  return v;
}

void write_history(std::ostream& out, const std::vector<double>& h) {
  out << "history " << h.size();
  for (double x : h) out << ' ' << fmt(x);
  out << '\n';
}

std::vector<double> parse_history(const std::string& text) {
  std::istringstream is(text);
  std::size_t n = 0;
  is >> n;
  std::vector<double> h;
  std::string tok;
  while (is >> tok) h.push_back(to_double(tok));
  if (h.size() != n) throw InputError("solution file: history length mismatch");
  return h;
}

}  // namespace

void write_solution(std::ostream& out, const RadialProfile& p) {
  out << "# " << kSolutionFormat << '\n';
  out << "kind radial\n";
  out << "dim " << p.dim << '\n';
  out << "radius " << fmt(p.radius) << '\n';
  out << "source " << p.source << '\n';
  out << "quadrature_order " << p.quadrature_order << '\n';
  out << "iterations " << p.iterations << '\n';
  out << "final_defect " << fmt(p.final_defect) << '\n';
  write_history(out, p.defect_history);
  out << "nodes " << p.size() << '\n';
  out << "columns r u up\n";
  for (std::size_t j = 0; j < p.size(); ++j) out << fmt(p.r[j]) << ' ' << fmt(p.u[j]) << ' ' << fmt(p.up[j]) << '\n';
}

void write_solution(std::ostream& out, const ScalarField2D& s) {
  out << "# " << kSolutionFormat << '\n';
  out << "kind grid2d\n";
  out << "domain " << s.mask->domain().describe() << '\n';
  out << "h " << fmt(s.mask->h()) << '\n';
  out << "source " << s.source << '\n';
  out << "newton_steps " << s.newton_steps << '\n';
  out << "step_halvings " << s.step_halvings << '\n';
  out << "final_residual " << fmt(s.final_residual) << '\n';
  write_history(out, s.residual_history);
  out << "nodes " << s.u.size() << '\n';
  out << "columns i j u\n";
  const auto& nodes = s.mask->nodes();
  for (std::size_t k = 0; k < s.u.size(); ++k) out << nodes[k].i << ' ' << nodes[k].j << ' ' << fmt(s.u[k]) << '\n';
}

Solution read_solution(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != std::string("# ") + kSolutionFormat)
    throw InputError("not a solution file (expected header '# " + std::string(kSolutionFormat) + "')");
  std::map<std::string, std::string> header;
  while (std::getline(in, line)) {
    const auto sp = line.find(' ');
    const std::string key = line.substr(0, sp);
    const std::string val = sp == std::string::npos ? "" : line.substr(sp + 1);
    header[key] = val;
    if (key == "columns") break;
  }
  auto need = [&](const std::string& k) -> const std::string& {
    const auto it = header.find(k);
    if (it == header.end()) throw InputError("solution file: missing '" + k + "'");
    return it->second;
  };
  const std::size_t count = static_cast<std::size_t>(std::stoull(need("nodes")));
  if (need("kind") == "radial") {
    RadialProfile p;
    p.dim = std::stoi(need("dim"));
    p.radius = to_double(need("radius"));
    p.source = need("source");
    p.quadrature_order = std::stoi(need("quadrature_order"));
    p.iterations = std::stoi(need("iterations"));
    p.final_defect = to_double(need("final_defect"));
    p.defect_history = parse_history(need("history"));
    for (std::size_t j = 0; j < count; ++j) {
      std::string a, b, c;
      if (!(in >> a >> b >> c)) throw InputError("solution file: truncated node records");
      p.r.push_back(to_double(a));
      p.u.push_back(to_double(b));
      p.up.push_back(to_double(c));
    }
    return p;
  }
  if (need("kind") == "grid2d") {
    ScalarField2D s;
    const DomainSpec spec = DomainSpec::parse(need("domain"));
    s.mask = std::make_shared<const GridMask>(rasterize(spec, to_double(need("h"))));
    s.source = need("source");
    s.newton_steps = std::stoi(need("newton_steps"));
    s.step_halvings = std::stoi(need("step_halvings"));
    s.final_residual = to_double(need("final_residual"));
    s.residual_history = parse_history(need("history"));
    if (count != s.mask->nodes().size()) throw InputError("solution file: node count does not match the domain");
    s.u.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
      int i = 0, j = 0;
      std::string v;
      if (!(in >> i >> j >> v)) throw InputError("solution file: truncated node records");
      if (s.mask->nodes()[k].i != i || s.mask->nodes()[k].j != j)
        throw InputError("solution file: node order does not match the domain");
      s.u[k] = to_double(v);
    }
    return s;
  }
  throw InputError("solution file: unknown kind '" + need("kind") + "'");
}

void save_solution(const std::string& path, const Solution& sol) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  std::visit([&](const auto& s) { write_solution(out, s); }, sol);
}

Solution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  return read_solution(in);
}

std::string solution_summary_json(const Solution& sol, const SolveConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema"] = kSummarySchema;
  j["config"] = {{"h", cfg.h},
                 {"radial_nodes", cfg.radial_nodes},
                 {"tolerance", cfg.tolerance},
                 {"max_iterations", cfg.max_iterations},
                 {"damping", cfg.damping},
                 {"eigen_tolerance", cfg.eigen_tolerance}};
  AdmissibilityReport adm;
  if (const auto* p = std::get_if<RadialProfile>(&sol)) {
    j["kind"] = "radial";
    j["dim"] = p->dim;
    j["radius"] = p->radius;
    j["source"] = p->source;
    j["nodes"] = p->size();
    j["u_min"] = p->u_min();
    j["boundary_gradient_min"] = p->boundary_gradient();
    j["boundary_gradient_max"] = p->boundary_gradient();
    j["iterations"] = p->iterations;
    j["final_defect"] = p->final_defect;
    adm = admissibility_report(*p);
  } else {
    const auto& s = std::get<ScalarField2D>(sol);
    j["kind"] = "grid2d";
    j["domain"] = s.mask->domain().describe();
    j["h"] = s.mask->h();
    j["source"] = s.source;
    j["nodes"] = s.u.size();
    j["u_min"] = s.u_min();
    double gmin = 0.0, gmax = 0.0;
    bool first = true;
    for (const auto& g : s.boundary_gradients()) {
      gmin = first ? g.grad_norm : std::min(gmin, g.grad_norm);
      gmax = first ? g.grad_norm : std::max(gmax, g.grad_norm);
      first = false;
    }
    j["boundary_gradient_min"] = gmin;
    j["boundary_gradient_max"] = gmax;
    j["newton_steps"] = s.newton_steps;
    j["step_halvings"] = s.step_halvings;
    j["final_residual"] = s.final_residual;
    adm = admissibility_report(s);
  }
  j["admissibility"] = {{"admissible", adm.admissible},
                        {"min_s1", adm.min_s1},
                        {"min_s2", adm.min_s2},
                        {"min_cofactor_eigenvalue", adm.min_cofactor_eigenvalue},
                        {"reason", adm.reason}};
  return j.dump(2);
}

}  // namespace s2kit
