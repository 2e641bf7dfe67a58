#include "s2kit/source.hpp"

#include <cmath>
#include <cstdio>

#include "s2kit/error.hpp"

namespace s2kit {

namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double number(const std::string& s, const std::string& whole) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw InputError("source '" + whole + "': bad number '" + s + "'");
  }
  if (used != s.size()) throw InputError("source '" + whole + "': bad number '" + s + "'");
  return v;
}

}  // namespace

SourceTerm SourceTerm::constant(double c) {
  if (!(c > 0.0)) throw SourceError("constant source must be positive");
  return SourceTerm(Preset::constant, c, 0.0);
}

SourceTerm SourceTerm::eigen(double lambda) {
  if (!(lambda > 0.0)) throw SourceError("eigen source needs lambda > 0");
  return SourceTerm(Preset::eigen, lambda, 2.0);
}

SourceTerm SourceTerm::power(double lambda, double p) {
  if (!(lambda > 0.0)) throw SourceError("power source needs lambda > 0");
  if (!(p > 0.0)) throw SourceError("power source needs p > 0");
  return SourceTerm(Preset::power, lambda, p);
}

SourceTerm SourceTerm::exp_decreasing(double kappa) {
  if (!(kappa > 0.0)) throw SourceError("exponential source needs a positive rate");
  return SourceTerm(Preset::exp_decreasing, kappa, 0.0);
}

SourceTerm SourceTerm::exp_increasing(double kappa) {
  if (!(kappa > 0.0)) throw SourceError("exponential source needs a positive rate");
  return SourceTerm(Preset::exp_increasing, kappa, 0.0);
}

SourceTerm SourceTerm::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (kind == "const") return constant(rest.empty() ? 1.0 : number(rest, text));
  if (kind == "eigen") return eigen(rest.empty() ? 1.0 : number(rest, text));
  if (kind == "expdec") return exp_decreasing(rest.empty() ? 1.0 : number(rest, text));
  if (kind == "expinc") return exp_increasing(rest.empty() ? 1.0 : number(rest, text));
  if (kind == "power") {
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw InputError("source '" + text + "': expected power:lambda,p");
    return power(number(rest.substr(0, comma), text), number(rest.substr(comma + 1), text));
  }
  throw InputError("unknown source preset '" + kind + "'");
}

std::string SourceTerm::describe() const {
  std::string s;
  switch (preset_) {
    case Preset::constant: s = "const:" + fmt(lambda_); break;
    case Preset::eigen: s = "eigen:" + fmt(lambda_); break;
    case Preset::power: s = "power:" + fmt(lambda_) + "," + fmt(p_); break;
    case Preset::exp_decreasing: s = "expdec:" + fmt(lambda_); break;
    case Preset::exp_increasing: s = "expinc:" + fmt(lambda_); break;
  }
  if (scale_ != 1.0) s += "*" + fmt(scale_);
  return s;
}

SourceTerm SourceTerm::scaled(double factor) const {
  if (!(factor > 0.0)) throw SourceError("source scale factor must be positive");
  SourceTerm s = *this;
  s.scale_ *= factor;
  return s;
}

double SourceTerm::value(double t) const {
  double v = 0.0;
  switch (preset_) {
    case Preset::constant: v = lambda_; break;
    case Preset::eigen: v = lambda_ * t * t; break;
    case Preset::power: v = t < 0.0 ? lambda_ * std::pow(-t, p_) : 0.0; break;
    case Preset::exp_decreasing: v = std::exp(-lambda_ * t); break;
    case Preset::exp_increasing: v = std::exp(lambda_ * t); break;
  }
  return scale_ * v;
}

double SourceTerm::derivative(double t) const {
  double d = 0.0;
  switch (preset_) {
    case Preset::constant: d = 0.0; break;
    case Preset::eigen: d = 2.0 * lambda_ * t; break;
    case Preset::power: d = t < 0.0 ? -lambda_ * p_ * std::pow(-t, p_ - 1.0) : 0.0; break;
    case Preset::exp_decreasing: d = -lambda_ * std::exp(-lambda_ * t); break;
    case Preset::exp_increasing: d = lambda_ * std::exp(lambda_ * t); break;
  }
  return scale_ * d;
}

SourceTerm::Monotonicity SourceTerm::monotonicity() const {
  switch (preset_) {
    case Preset::constant: return Monotonicity::constant;
    case Preset::eigen:
    case Preset::power:
    case Preset::exp_decreasing: return Monotonicity::nonincreasing;
    case Preset::exp_increasing: return Monotonicity::nondecreasing;
  }
  return Monotonicity::constant;
}

std::string to_string(SourceTerm::Monotonicity m) {
  switch (m) {
    case SourceTerm::Monotonicity::constant: return "constant";
    case SourceTerm::Monotonicity::nonincreasing: return "nonincreasing";
    case SourceTerm::Monotonicity::nondecreasing: return "nondecreasing";
  }
  return "unknown";
}

}  // namespace s2kit
