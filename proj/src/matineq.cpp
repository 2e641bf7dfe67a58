#include "s2kit/matineq.hpp"

#include <algorithm>
#include <cmath>

#include "s2kit/error.hpp"

namespace s2kit {

namespace {

void require_matching(const SymmetricMatrix& a, std::span<const double> v) {
  if (static_cast<int>(v.size()) != a.dim()) throw InputError("vector length does not match matrix dimension");
  if (!a.is_finite()) throw InputError("symmetric matrix has a non-finite entry");
  for (double x : v)
    if (!std::isfinite(x)) throw InputError("vector has a non-finite entry");
}

// S_2 via (tr X)^2 - tr(X^2), valid for every square matrix.
double s2_from_traces(const SymmetricMatrix& x) {
  const double tr = x.trace();
  return 0.5 * (tr * tr - contract(x, x));
}

// (Av)(v)^T + v(Av)^T, i.e. AB + BA with B = v v^T.
SymmetricMatrix anticommutator_with_outer(std::span<const double> av, std::span<const double> v) {
  SymmetricMatrix m(static_cast<int>(v.size()));
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) m.set(i, j, av[i] * v[j] + v[i] * av[j]);
  return m;
}

}  // namespace

bool InequalityRecord::closed_form_agrees(double tol) const {
  return std::abs(residual_direct - residual_closed) <= tol * scale;
}

MatrixSign classify_sign(const Spectrum& spec, double norm) {
  const double tol = 1e-12 * norm;
  if (spec.min() >= -tol) return MatrixSign::positive;
  if (spec.max() <= tol) return MatrixSign::negative;
  return MatrixSign::indefinite;
}

InequalityRecord lemma1_evaluate(const SymmetricMatrix& a, std::span<const double> v) {
  require_matching(a, v);
  const SymmetricMatrix b = newton_comatrix(a);
  const double tr_a = a.trace();
  const double tr_b = b.trace();
  const double tr_ba = contract(b, a);
  const double r = norm_squared(v);
  const Vec av = a.apply(v);
  const Vec bv = b.apply(v);

  InequalityRecord rec;
  rec.lhs = r * (2.0 * tr_ba - tr_b * tr_a) / 3.0;
  rec.rhs = 2.0 * dot(av, bv) - dot(av, v) * tr_b;
  rec.residual_direct = rec.rhs - rec.lhs;

  const Eigensystem es = eigensystem(a);
  const Vec w = es.coordinates(v);
  double closed = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k)
    closed += w[k] * w[k] * omitted_sym(es.spectrum, 3, static_cast<int>(k));
  rec.residual_closed = 2.0 * closed;

  const double norm = a.frobenius_norm();
  rec.matrix_sign = classify_sign(es.spectrum, norm);
  rec.scale = 1.0 + norm * norm * norm * r;
  return rec;
}

InequalityRecord remark_sign_check(const SymmetricMatrix& a, std::span<const double> v) {
  require_matching(a, v);
  const Spectrum spec = spectrum(a);
  if (spec.max() > 1e-12 * a.frobenius_norm())
    throw PreconditionError("remark_sign_check: matrix is not negative semidefinite");
  return lemma1_evaluate(a, v);
}

bool ContractionScalars::identities_hold(double rel_tol) const {
  for (std::size_t i = 0; i < gaps.size(); ++i)
    if (std::abs(gaps[i]) > rel_tol * scales[i]) return false;
  return true;
}

ContractionScalars contraction_scalars(const SymmetricMatrix& a, std::span<const double> v) {
  require_matching(a, v);
  const int n = a.dim();
  ContractionScalars cs;
  const Vec av = a.apply(v);
  cs.r = norm_squared(v);
  cs.s = a.trace();
  cs.q = dot(av, v);
  cs.t = norm_squared(av);

  const SymmetricMatrix cof = cofactor_s2(a);
  const SymmetricMatrix outer_v = SymmetricMatrix::outer(v);
  const SymmetricMatrix projector = cs.r * SymmetricMatrix::identity(n) - outer_v;
  const SymmetricMatrix anti = anticommutator_with_outer(av, v);
  const SymmetricMatrix a2 = a.squared();
  const SymmetricMatrix outer_av = SymmetricMatrix::outer(av);
  const SymmetricMatrix b2 = outer_v.squared();
  const Vec cof_av = cof.apply(av);

  const double fc = cof.frobenius_norm();
  const double fp = projector.frobenius_norm();

  cs.gaps[0] = contract(cof, anti) - (2.0 * cs.s * cs.q - 2.0 * cs.t);
  cs.scales[0] = fc * anti.frobenius_norm() + 2.0 * std::abs(cs.s * cs.q) + 2.0 * cs.t;

  cs.gaps[1] = contract(projector, a2) - (cs.r * contract(a, a) - cs.t);
  cs.scales[1] = fp * a2.frobenius_norm() + cs.r * contract(a, a) + cs.t;

  cs.gaps[2] = dot(v, cof_av) - (cs.s * cs.q - cs.t);
  cs.scales[2] = std::sqrt(cs.r) * fc * std::sqrt(cs.t) + std::abs(cs.s * cs.q) + cs.t;

  cs.gaps[3] = contract(projector, outer_av) - (cs.r * cs.t - cs.q * cs.q);
  cs.scales[3] = fp * outer_av.frobenius_norm() + cs.r * cs.t + cs.q * cs.q;

  cs.gaps[4] = contract(projector, anti);
  cs.scales[4] = fp * anti.frobenius_norm();

  cs.gaps[5] = contract(projector, b2);
  cs.scales[5] = fp * b2.frobenius_norm();
  return cs;
}

TransformEval TransformEval::from_derivatives(double u, double U_prime, double U_second) {
  TransformEval ev;
  ev.u_value = u;
  ev.U_prime = U_prime;
  ev.U_second = U_second;
  ev.monotone = U_prime >= 0.0 ? Monotone::increasing : Monotone::decreasing;
  return ev;
}

double transported_form(const SymmetricMatrix& x, std::span<const double> v) {
  require_matching(x, v);
  const double r = norm_squared(v);
  const SymmetricMatrix cof = cofactor_s2(x);
  const double s2 = s2_from_traces(x);
  const Vec xv = x.apply(v);
  const double first = r * (2.0 * contract(cof, x.squared()) - 2.0 * s2 * x.trace()) / 3.0;
  return first - 2.0 * dot(xv, cof.apply(xv)) + 2.0 * s2 * dot(xv, v);
}

bool Lemma2Result::agrees(double rel_tol) const {
  return std::abs(m_direct - m_factored) <= rel_tol * scale;
}

Lemma2Result lemma2_evaluate(const SymmetricMatrix& hess_U, std::span<const double> grad_u,
                             const TransformEval& tr) {
  require_matching(hess_U, grad_u);
  if (std::abs(tr.U_prime) < 1e-10)
    throw SingularTransformError("lemma2_evaluate: |U'| < 1e-10, transform is not strictly monotone");
  const SymmetricMatrix a_u =
      (1.0 / tr.U_prime) * (hess_U - tr.U_second * SymmetricMatrix::outer(grad_u));
  const double r = norm_squared(grad_u);
  const double cube = tr.U_prime * tr.U_prime * tr.U_prime;

  Lemma2Result res;
  res.m_direct = transported_form(hess_U, grad_u);
  res.m_factored = cube * transported_form(a_u, grad_u);
  const double fh = hess_U.frobenius_norm();
  const double fa = a_u.frobenius_norm();
  res.scale = 1.0 + fh * fh * fh * r + std::abs(cube) * fa * fa * fa * r;
  return res;
}

bool ExpansionCoeffs::vanishing_holds(double tol) const {
  const double bound = tol * std::max(1.0, std::abs(m30));
  return std::abs(m21) <= bound && std::abs(m12) <= bound && std::abs(m03) <= bound &&
         std::abs(m30 - m30_direct) <= bound;
}

double alpha_cubed_coefficient(const SymmetricMatrix& a, std::span<const double> v) {
  require_matching(a, v);
  const Vec av = a.apply(v);
  const double r = norm_squared(v);
  const double s = a.trace();
  const double q = dot(av, v);
  const double t = norm_squared(av);
  const double tr_a2 = contract(a, a);
  const SymmetricMatrix a2 = a.squared();
  const double tr_a3 = contract(a2, a);
  const double av_a_av = dot(av, a.apply(av));
  const double s2 = 0.5 * (s * s - tr_a2);
  // S2^ij(A)(A^2)_ji = s tr(A^2) - tr(A^3);  S2^ij(A)(Av)_j(Av)_i = s t - <A Av, Av>
  return r * (2.0 * (s * tr_a2 - tr_a3) - 2.0 * s2 * s) / 3.0 - 2.0 * (s * t - av_a_av) +
         2.0 * s2 * q;
}

ExpansionCoeffs expansion_coefficients(const SymmetricMatrix& a_u, std::span<const double> grad_u) {
  require_matching(a_u, grad_u);
  static constexpr std::array<std::array<double, 2>, 4> kProbes{{{1, 0}, {0, 1}, {1, 1}, {2, 1}}};
  const SymmetricMatrix outer_v = SymmetricMatrix::outer(grad_u);

  // Rows: [alpha^3, alpha^2 beta, alpha beta^2, beta^3 | M(alpha, beta)]
  std::array<std::array<double, 5>, 4> sys{};
  for (std::size_t p = 0; p < kProbes.size(); ++p) {
    const double al = kProbes[p][0];
    const double be = kProbes[p][1];
    sys[p] = {al * al * al, al * al * be, al * be * be, be * be * be,
              transported_form(al * a_u + be * outer_v, grad_u)};
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 4; ++row)
      if (std::abs(sys[row][col]) > std::abs(sys[pivot][col])) pivot = row;
    if (std::abs(sys[pivot][col]) < 1e-12) throw InternalError("expansion_coefficients: singular probe system");
    std::swap(sys[col], sys[pivot]);
    for (int row = 0; row < 4; ++row) {
      if (row == col) continue;
      const double f = sys[row][col] / sys[col][col];
      for (int k = col; k < 5; ++k) sys[row][k] -= f * sys[col][k];
    }
  }
  ExpansionCoeffs c;
  c.m30 = sys[0][4] / sys[0][0];
  c.m21 = sys[1][4] / sys[1][1];
  c.m12 = sys[2][4] / sys[2][2];
  c.m03 = sys[3][4] / sys[3][3];
  c.m30_direct = alpha_cubed_coefficient(a_u, grad_u);
  return c;
}

}  // namespace s2kit
