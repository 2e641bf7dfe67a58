#pragma once

#include <string>

namespace s2kit {

/// Right-hand side f(u) of S2(D^2u) = f(u), evaluated for u <= 0.
class SourceTerm {
 public:
  enum class Preset { constant, eigen, power, exp_decreasing, exp_increasing };
  enum class Monotonicity { constant, nonincreasing, nondecreasing };

  /// f = c
  static SourceTerm constant(double c);
  /// f = lambda t^2
  static SourceTerm eigen(double lambda);
  /// f = lambda (-t)^p
  static SourceTerm power(double lambda, double p);
  /// f = exp(-kappa t), kappa > 0
  static SourceTerm exp_decreasing(double kappa = 1.0);
  /// f = exp(kappa t), kappa > 0
  static SourceTerm exp_increasing(double kappa = 1.0);

  /// Text forms: const:c, eigen:lambda, power:lambda,p, expdec[:kappa], expinc[:kappa].
  static SourceTerm parse(const std::string& text);
  std::string describe() const;

  Preset preset() const { return preset_; }
  double lambda() const { return lambda_; }
  double exponent() const { return p_; }
  double multiplier() const { return scale_; }

  /// Same preset multiplied by a positive factor.
  SourceTerm scaled(double factor) const;

  double operator()(double t) const { return value(t); }
  double value(double t) const;
  double derivative(double t) const;

  Monotonicity monotonicity() const;
  /// f' <= 0 on t <= 0
  bool nonincreasing() const { return monotonicity() != Monotonicity::nondecreasing; }
  /// f' >= 0 on t <= 0
  bool nondecreasing() const { return monotonicity() != Monotonicity::nonincreasing; }

 private:
  SourceTerm(Preset preset, double lambda, double p) : preset_(preset), lambda_(lambda), p_(p) {}

  Preset preset_;
  double lambda_;  ///< constant value, eigenvalue, power coefficient or exponential rate
  double p_;
  double scale_ = 1.0;
};

std::string to_string(SourceTerm::Monotonicity m);

}  // namespace s2kit
