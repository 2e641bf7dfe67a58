#include "s2kit/grid2d.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "s2kit/error.hpp"

namespace s2kit {

namespace {

// Second difference with arms a (forward) and b (backward), exact on quadratics.
struct Stencil3 {
  double cf, c0, cb;
};

Stencil3 second_difference(double a, double b) {
  return {2.0 / (a * (a + b)), -2.0 / (a * b), 2.0 / (b * (a + b))};
}

double apply(const Stencil3& s, double uf, double u0, double ub) { return s.cf * uf + s.c0 * u0 + s.cb * ub; }

// First difference with arms a (forward) and b (backward), second order.
double first_difference(double a, double b, double uf, double u0, double ub) {
  return (b * b * (uf - u0) + a * a * (u0 - ub)) / (a * b * (a + b));
}

struct Second {
  double uxx, uyy, uxy;
};

Second second_derivatives(const GridNode& nd, const std::function<double(int)>& val, double u0) {
  auto d2 = [&](int f, int b) { return apply(second_difference(nd.arm[f], nd.arm[b]), val(f), u0, val(b)); };
  const double uxx = d2(0, 1);
  const double uyy = d2(2, 3);
  const double uxi = d2(4, 5);
  const double ueta = d2(6, 7);
  return {uxx, uyy, 0.5 * (uxi - ueta)};
}

}  // namespace

double ScalarField2D::neighbour_value(std::size_t k, int dir) const {
  const int nb = mask->nodes()[k].neighbour[dir];
  return nb < 0 ? 0.0 : u[static_cast<std::size_t>(nb)];
}

NodeDerivatives ScalarField2D::derivatives(std::size_t k) const {
  const GridNode& nd = mask->nodes()[k];
  auto val = [&](int dir) { return neighbour_value(k, dir); };
  const Second s = second_derivatives(nd, val, u[k]);
  NodeDerivatives d;
  d.uxx = s.uxx;
  d.uyy = s.uyy;
  d.uxy = s.uxy;
  d.ux = first_difference(nd.arm[0], nd.arm[1], val(0), u[k], val(1));
  d.uy = first_difference(nd.arm[2], nd.arm[3], val(2), u[k], val(3));
  return d;
}

Jet ScalarField2D::jet(std::size_t k) const {
  const NodeDerivatives d = derivatives(k);
  Jet j;
  j.value = u[k];
  j.gradient = {d.ux, d.uy};
  j.hessian = SymmetricMatrix::from_rows({{d.uxx, d.uxy}, {d.uxy, d.uyy}});
  return j;
}

std::size_t ScalarField2D::argmin() const {
  return static_cast<std::size_t>(std::min_element(u.begin(), u.end()) - u.begin());
}

std::vector<BoundaryGradient> ScalarField2D::boundary_gradients() const {
  std::vector<BoundaryGradient> out;
  for (const BoundaryCrossing& c : mask->crossings()) {
    const auto [si, sj] = kDirectionSteps[c.dir];
    const double ndot = c.normal[0] * si + c.normal[1] * sj;
    if (std::abs(ndot) < 0.5) continue;
    const GridNode& nd = mask->nodes()[c.node];
    const int opp = kOpposite[c.dir];
    const double s = nd.arm[c.dir];
    const double b = nd.arm[opp];
    const double t = s + b;
    const double u1 = u[c.node];
    const double u2 = neighbour_value(c.node, opp);
    const double c1 = (u1 * t * t - u2 * s * s) / (s * t * b);
    BoundaryGradient g;
    g.point = c.point;
    g.normal = c.normal;
    g.grad_norm = std::abs(c1) / std::abs(ndot);
    g.node = c.node;
    out.push_back(g);
  }
  return out;
}

Vec grid_residual(const ScalarField2D& sol, const SourceTerm& f) {
  Vec r(sol.u.size());
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    const NodeDerivatives d = sol.derivatives(k);
    r[k] = d.uxx * d.uyy - d.uxy * d.uxy - f(sol.u[k]);
  }
  return r;
}

namespace {

double sup_norm(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool admissible(const ScalarField2D& sol) {
  for (std::size_t k = 0; k < sol.u.size(); ++k) {
    const NodeDerivatives d = sol.derivatives(k);
    if (!(d.uxx + d.uyy > 0.0) || !(d.uxx * d.uyy - d.uxy * d.uxy > 0.0)) return false;
  }
  return true;
}

using SpMat = Eigen::SparseMatrix<double>;

constexpr int kMaxWarmSweeps = 2000;

// Entries are emitted even for w = 0 so the sparsity pattern stays fixed across Newton steps.
void add_stencil(std::vector<Eigen::Triplet<double>>& trip, const GridNode& nd, int row, int f, int b, double w) {
  const Stencil3 s = second_difference(nd.arm[f], nd.arm[b]);
  trip.emplace_back(row, row, w * s.c0);
  if (nd.neighbour[f] >= 0) trip.emplace_back(row, nd.neighbour[f], w * s.cf);
  if (nd.neighbour[b] >= 0) trip.emplace_back(row, nd.neighbour[b], w * s.cb);
}

}  // namespace

ScalarField2D solve_grid2d(const DomainSpec& spec, const SourceTerm& f, const SolveConfig& cfg) {
  cfg.validate();
  if (spec.dim() != 2) throw ConfigurationError("grid solver needs a 2D domain");
  if (!assert_convex(spec)) throw PreconditionError("grid solver needs a convex domain");
  const double f0 = f(0.0);
  if (!(f0 > 0.0)) throw SourceError("grid solver needs f(0) > 0, got " + std::to_string(f0));

  auto mask = std::make_shared<const GridMask>(rasterize(spec, cfg.h));
  const auto& nodes = mask->nodes();
  const int n = static_cast<int>(nodes.size());

  ScalarField2D sol;
  sol.mask = mask;
  sol.source = f.describe();

  // Initial iterate: Laplace u0 = 2 sqrt(f(0)).
  {
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs(n);
    for (int k = 0; k < n; ++k) {
      add_stencil(trip, nodes[k], k, 0, 1, 1.0);
      add_stencil(trip, nodes[k], k, 2, 3, 1.0);
      rhs[k] = 2.0 * std::sqrt(f0);
    }
    SpMat lap(n, n);
    lap.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<SpMat> lu;
    lu.compute(lap);
    if (lu.info() != Eigen::Success) throw SolverError("initial Laplace solve failed");
    const Eigen::VectorXd u0 = lu.solve(rhs);
    sol.u.assign(u0.data(), u0.data() + n);

    // Near polygon corners the Laplace guess is not convex. Fixed-point sweeps of
    // Lap u = sqrt((u_xx - u_yy)^2 + 4 u_xy^2 + 4 f(u)) stay on the convex branch.
    for (int sweep = 0; sweep < kMaxWarmSweeps && !admissible(sol); ++sweep) {
      for (int k = 0; k < n; ++k) {
        const NodeDerivatives d = sol.derivatives(static_cast<std::size_t>(k));
        const double fk = f(sol.u[k]);
        if (!(fk > 0.0) || !std::isfinite(fk)) throw SolverError("warm start left the domain of f");
        rhs[k] = std::sqrt((d.uxx - d.uyy) * (d.uxx - d.uyy) + 4.0 * d.uxy * d.uxy + 4.0 * fk);
      }
      const Eigen::VectorXd next = lu.solve(rhs);
      sol.u.assign(next.data(), next.data() + n);
    }
  }

  Vec res = grid_residual(sol, f);
  double rnorm = sup_norm(res);
  sol.residual_history.push_back(rnorm);
  Eigen::SparseLU<SpMat> lu;
  bool analysed = false;

  for (int it = 1; it <= cfg.max_iterations && rnorm > cfg.tolerance; ++it) {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(n) * 13);
    Eigen::VectorXd rhs(n);
    for (int k = 0; k < n; ++k) {
      const NodeDerivatives d = sol.derivatives(static_cast<std::size_t>(k));
      const GridNode& nd = nodes[k];
      add_stencil(trip, nd, k, 0, 1, d.uyy);
      add_stencil(trip, nd, k, 2, 3, d.uxx);
      add_stencil(trip, nd, k, 4, 5, -d.uxy);
      add_stencil(trip, nd, k, 6, 7, d.uxy);
      trip.emplace_back(k, k, -f.derivative(sol.u[k]));
      rhs[k] = -res[k];
    }
    SpMat jac(n, n);
    jac.setFromTriplets(trip.begin(), trip.end());
    if (!analysed) {
      lu.analyzePattern(jac);
      analysed = true;
    }
    lu.factorize(jac);
    if (lu.info() != Eigen::Success) throw SolverError("Newton Jacobian factorization failed at step " + std::to_string(it));
    const Eigen::VectorXd delta = lu.solve(rhs);

    double t = cfg.damping;
    bool accepted = false;
    ScalarField2D trial = sol;
    while (t >= 1.0 / 1024.0) {
      for (int k = 0; k < n; ++k) trial.u[k] = sol.u[k] + t * delta[k];
      if (admissible(trial)) {
        Vec tres = grid_residual(trial, f);
        const double tn = sup_norm(tres);
        if (tn < rnorm || tn <= cfg.tolerance) {
          sol.u.swap(trial.u);
          res.swap(tres);
          rnorm = tn;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
      ++sol.step_halvings;
    }
    if (!accepted)
    {
      std::ostringstream msg;
      msg << "Newton step " << it << ": no damped step keeps the iterate admissible and reduces the residual "
          << rnorm;
      throw SolverError(msg.str());
    }
    sol.newton_steps = it;
    sol.residual_history.push_back(rnorm);
  }
  sol.final_residual = rnorm;
  if (rnorm > cfg.tolerance) {
    std::ostringstream msg;
    msg << "Newton iteration did not converge; residual history:";
    for (double r : sol.residual_history) msg << ' ' << r;
    throw SolverError(msg.str());
  }
  return sol;
}

ScalarField2D radial_reference(const DomainSpec& spec, double h, const SourceTerm& f, const SolveConfig& cfg) {
  double a = 1.0, b = 1.0;
  if (spec.kind() == DomainSpec::Kind::ball && spec.dim() == 2) {
    if (spec.center()[0] != 0.0 || spec.center()[1] != 0.0)
      throw PreconditionError("radial reference needs a disk centred at the origin");
    a = b = spec.radius();
  } else if (spec.kind() == DomainSpec::Kind::ellipse) {
    a = spec.semi_a();
    b = spec.semi_b();
  } else {
    throw PreconditionError("radial reference exists for disks and ellipses only");
  }
  const RadialProfile w = solve_radial(2, 1.0, f.scaled(a * a * b * b), cfg);
  ScalarField2D ref;
  ref.mask = std::make_shared<const GridMask>(rasterize(spec, h));
  ref.source = f.describe();
  for (const GridNode& nd : ref.mask->nodes()) {
    const double rho = std::sqrt(nd.pos[0] * nd.pos[0] / (a * a) + nd.pos[1] * nd.pos[1] / (b * b));
    ref.u.push_back(w.value_at(std::min(rho, 1.0)));
  }
  return ref;
}

}  // namespace s2kit
