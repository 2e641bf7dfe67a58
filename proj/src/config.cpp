#include "s2kit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "s2kit/error.hpp"

namespace s2kit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw InputError("bad number for " + key + ": '" + v + "'");
  return x;
}

long long to_int(const std::string& key, const std::string& v) {
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw InputError("bad integer for " + key + ": '" + v + "'");
  return x;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw InputError("bad unsigned integer for " + key + ": '" + v + "'");
  return x;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + format_double(xs[i]);
  return s;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  const std::string t = trim(text);
  const auto dots = t.find("..");
  if (dots != std::string::npos) {
    const long long lo = to_int("dims", trim(t.substr(0, dots)));
    const long long hi = to_int("dims", trim(t.substr(dots + 2)));
    if (lo > hi) throw InputError("empty dimension range '" + text + "'");
    for (long long d = lo; d <= hi; ++d) dims.push_back(static_cast<int>(d));
  } else {
    for (double d : to_list("dims", t)) {
      if (d != static_cast<int>(d)) throw InputError("dimension must be an integer: '" + text + "'");
      dims.push_back(static_cast<int>(d));
    }
  }
  if (dims.empty()) throw InputError("no dimensions in '" + text + "'");
  for (int d : dims)
    if (d < 2 || d > 8) throw InputError("dimension " + std::to_string(d) + " outside 2..8");
  return dims;
}

std::string format_dims(const std::vector<int>& dims) {
  bool contiguous = dims.size() > 1;
  for (std::size_t i = 1; i < dims.size(); ++i) contiguous = contiguous && dims[i] == dims[i - 1] + 1;
  if (contiguous) return std::to_string(dims.front()) + ".." + std::to_string(dims.back());
  std::string s;
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? "," : "") + std::to_string(dims[i]);
  return s;
}

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> v{"alphas", "app",       "command",         "count",      "damping",  "dim",
                               "dims",   "domain",    "eigen_tolerance", "gammas",     "h",        "lambda",
                               "max_iterations",      "mode",            "out",        "p",        "principle",
                               "radial_nodes",        "radius",          "seed",       "sign",     "solution",
                               "source", "tolerance"};
    std::sort(v.begin(), v.end());
    return v;
  }();
  return k;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string v = trim(raw);
  if (key == "command") command = v;
  else if (key == "mode") mode = v;
  else if (key == "dim") dim = static_cast<int>(to_int(key, v));
  else if (key == "radius") radius = to_double(key, v);
  else if (key == "domain") domain = v;
  else if (key == "source") source = v;
  else if (key == "h") solver.h = to_double(key, v);
  else if (key == "radial_nodes") solver.radial_nodes = static_cast<int>(to_int(key, v));
  else if (key == "tolerance") solver.tolerance = to_double(key, v);
  else if (key == "max_iterations") solver.max_iterations = static_cast<int>(to_int(key, v));
  else if (key == "damping") solver.damping = to_double(key, v);
  else if (key == "eigen_tolerance") solver.eigen_tolerance = to_double(key, v);
  else if (key == "alphas") alphas = to_list(key, v);
  else if (key == "gammas") gammas = to_list(key, v);
  else if (key == "app") app = static_cast<int>(to_int(key, v));
  else if (key == "p") p = to_double(key, v);
  else if (key == "lambda") lambda = to_double(key, v);
  else if (key == "principle") principle = v;
  else if (key == "seed") seed = to_uint(key, v);
  else if (key == "dims") dims = parse_dims(v);
  else if (key == "count") count = static_cast<std::size_t>(to_uint(key, v));
  else if (key == "sign") sign = v;
  else if (key == "out") out = v;
  else if (key == "solution") solution = v;
  else throw InputError("unknown configuration key '" + key + "'");
}

std::string RunConfig::get(const std::string& key) const {
  if (key == "command") return command;
  if (key == "mode") return mode;
  if (key == "dim") return std::to_string(dim);
  if (key == "radius") return format_double(radius);
  if (key == "domain") return domain;
  if (key == "source") return source;
  if (key == "h") return format_double(solver.h);
  if (key == "radial_nodes") return std::to_string(solver.radial_nodes);
  if (key == "tolerance") return format_double(solver.tolerance);
  if (key == "max_iterations") return std::to_string(solver.max_iterations);
  if (key == "damping") return format_double(solver.damping);
  if (key == "eigen_tolerance") return format_double(solver.eigen_tolerance);
  if (key == "alphas") return join(alphas);
  if (key == "gammas") return join(gammas);
  if (key == "app") return std::to_string(app);
  if (key == "p") return format_double(p);
  if (key == "lambda") return format_double(lambda);
  if (key == "principle") return principle;
  if (key == "seed") return std::to_string(seed);
  if (key == "dims") return format_dims(dims);
  if (key == "count") return std::to_string(count);
  if (key == "sign") return sign;
  if (key == "out") return out;
  if (key == "solution") return solution;
  throw InputError("unknown configuration key '" + key + "'");
}

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigurationError("line " + std::to_string(lineno) + ": expected key = value");
    try {
      cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const InputError& e) {
      throw ConfigurationError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::map<std::string, std::string> RunConfig::as_map() const {
  std::map<std::string, std::string> m;
  for (const auto& k : keys()) m[k] = get(k);
  return m;
}

std::string RunConfig::canonical() const {
  std::string s;
  for (const auto& [k, v] : as_map()) s += k + " = " + v + "\n";
  return s;
}

void RunConfig::validate() const {
  solver.validate();
  auto bad = [](const std::string& what) { throw ConfigurationError(what); };
  if (mode != "radial" && mode != "grid2d" && mode != "eigen") bad("mode must be radial, grid2d or eigen");
  if (dim < 2 || dim > 6) bad("radial dimension must be in 2..6");
  if (!(radius > 0.0)) bad("radius must be positive");
  if (app < 0 || app > 3) bad("app must be 0, 1, 2 or 3");
  if (principle != "min" && principle != "max") bad("principle must be min or max");
  if (sign != "positive" && sign != "negative" && sign != "indefinite") bad("sign must be positive, negative or indefinite");
  if (count < 1) bad("count must be at least 1");
  if (alphas.empty()) bad("at least one alpha is required");
  for (double g : gammas)
    if (g != 0.5 && g != 1.0) bad("gammas must be 0.5 or 1");
  if (solver.radial_nodes > 4096) bad("radial_nodes above 4096");
  if (solver.h < 1.0 / 256.0 * 0.999) bad("h below 1/256");
}

}  // namespace s2kit
