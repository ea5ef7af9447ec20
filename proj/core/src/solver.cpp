#include "radeig/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace radeig {

namespace {

// The discrete problem  F + b u1|u1|^alpha + zero_i |u|^alpha u = rhs_i  on a
// fixed grid, with every coefficient already sampled at the nodes.
struct NodeProblem {
  EllipticOperator op;
  RadialGrid grid;
  std::vector<double> b;
  std::vector<double> zero;
  std::vector<double> rhs;
  std::vector<SplitSlopes> slopes;
  // central tangential difference at node i (else forward)
  std::vector<std::uint8_t> central;
};

struct Tridiagonal {
  std::vector<double> lower;  // coefficient of u_{i-1}
  std::vector<double> diag;
  std::vector<double> upper;  // coefficient of u_{i+1}
};

std::vector<double> sample(const RadialProfile& f, const RadialGrid& grid) {
  std::vector<double> v(static_cast<std::size_t>(grid.size()));
  if (f.is_constant()) {
    std::fill(v.begin(), v.end(), f(0.0));
    return v;
  }
  for (int i = 0; i < grid.size(); ++i) v[static_cast<std::size_t>(i)] = f(grid.node(i));
  return v;
}

double sup_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

double rms(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s / static_cast<double>(v.size()));
}

double signed_power_slope(double u, double alpha) {
  if (alpha == 0.0) return 1.0;
  const double m = std::max(std::abs(u), 1e-12);
  return (alpha + 1.0) * std::pow(m, alpha);
}

// Gradient factor phi(s) = max(|s|, delta)^alpha, psi(s) = s phi(s) and the
// primitive Psi' = phi. The radial part phi(u') h_r(u'') equals h_r((Psi(u'))')
// because h_r is positively homogeneous and Psi increasing, which yields the
// flux form (Psi(D+) - Psi(D-)) / h: monotone for every alpha.
struct GradientMaps {
  double alpha;
  double delta;
  double delta_pow;  // delta^alpha

  GradientMaps(double a, double d) : alpha(a), delta(d), delta_pow(std::pow(d, a)) {}

  double phi(double s) const {
    if (alpha == 0.0) return 1.0;
    const double m = std::abs(s);
    return m > delta ? std::pow(m, alpha) : delta_pow;
  }
  double psi(double s) const { return s * phi(s); }
  double psi_slope(double s) const {
    if (alpha == 0.0) return 1.0;
    const double m = std::abs(s);
    return m > delta ? (alpha + 1.0) * std::pow(m, alpha) : delta_pow;
  }
  double primitive(double s) const {
    if (alpha == 0.0) return s;
    const double m = std::abs(s);
    const double v = m <= delta ? delta_pow * m
                                : delta_pow * delta +
                                      (std::pow(m, alpha + 1.0) - delta_pow * delta) / (alpha + 1.0);
    return s < 0.0 ? -v : v;
  }
};

// Residual and, when `jac` is non-null, its tridiagonal Jacobian. Returns the
// rounding floor of the residual: a few ulps of the largest term entering it.
//
// Interior nodes: h_r(Q) + (N-1) h_t(psi(s)/r) + b psi(s_c) + zero |u|^alpha u - rhs,
// Q = (Psi(D+) - Psi(D-)) / h, s_c the central difference and s = s_c where
// the cell Peclet bound allows it (else the forward difference D+). The ghost
// reflections give D- = -D+ at r = 0 (where h_t(Q) replaces the tangential
// part) and D+ = -D- at r = R.
double assemble(const NodeProblem& p, std::span<const double> u, std::vector<double>& res,
                Tridiagonal* jac) {
  const RadialGrid& grid = p.grid;
  const int n = grid.size();
  const double tang_mult = grid.dim() - 1;
  const double h = grid.spacing();
  const double inv_h = 1.0 / h;
  const double inv_h2 = inv_h * inv_h;
  const double alpha = p.op.alpha();
  const GradientMaps g(alpha, p.op.gradient_floor());
  res.resize(static_cast<std::size_t>(n));
  if (jac) {
    jac->lower.assign(static_cast<std::size_t>(n), 0.0);
    jac->diag.assign(static_cast<std::size_t>(n), 0.0);
    jac->upper.assign(static_cast<std::size_t>(n), 0.0);
  }
  double magnitude = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const SplitSlopes& sl = p.slopes[k];
    double dp = 0.0;
    double dm = 0.0;
    if (i == 0) {
      dp = (u[k + 1] - u[k]) * inv_h;
      dm = -dp;
    } else if (i == n - 1) {
      dm = (u[k] - u[k - 1]) * inv_h;
      dp = -dm;
    } else {
      dp = (u[k + 1] - u[k]) * inv_h;
      dm = (u[k] - u[k - 1]) * inv_h;
    }
    const double q = (g.primitive(dp) - g.primitive(dm)) * inv_h;
    const double phi_p = g.phi(dp) * inv_h2;
    const double phi_m = g.phi(dm) * inv_h2;
    const double slope_r = sl.radial(q);
    double value = slope_r * q;
    double lower = slope_r * phi_m;
    double upper = slope_r * phi_p;
    double diag = -(lower + upper);
    double tang_term = 0.0;
    double drift_term = 0.0;

    if (i == 0) {
      const double slope_t = sl.tangential(q);
      tang_term = tang_mult * slope_t * q;
      // lower is the ghost u_{-1} = u_1
      upper += lower + tang_mult * slope_t * 2.0 * phi_p;
      diag = -upper;
      lower = 0.0;
    } else if (i == n - 1) {
      // ghost u_n = u_{n-2}; the tangential part vanishes with u1 = 0
      lower += upper;
      diag = -lower;
      upper = 0.0;
    } else {
      const double r = grid.node(i);
      const double sc = 0.5 * (dp + dm);
      const double s = p.central[k] ? sc : dp;
      const double t = g.psi(s) / r;
      const double slope_t = sl.tangential(t);
      tang_term = tang_mult * slope_t * t;
      const double dt_ds = tang_mult * slope_t * g.psi_slope(s) / r;
      if (p.central[k]) {
        upper += dt_ds * 0.5 * inv_h;
        lower -= dt_ds * 0.5 * inv_h;
      } else {
        upper += dt_ds * inv_h;
        diag -= dt_ds * inv_h;
      }
      if (p.b[k] != 0.0) {
        drift_term = p.b[k] * g.psi(sc);
        const double dd = p.b[k] * g.psi_slope(sc) * 0.5 * inv_h;
        upper += dd;
        lower -= dd;
      }
    }
    const double zero_term = p.zero[k] * signed_power(u[k], alpha);
    value += tang_term + drift_term + zero_term;
    res[k] = value - p.rhs[k];
    const double local = std::max({std::abs(u[i > 0 ? k - 1 : k + 1]), std::abs(u[k]),
                                   std::abs(u[i + 1 < n ? k + 1 : k - 1])});
    magnitude = std::max(magnitude, 4.0 * (std::abs(lower) + std::abs(upper)) * local +
                                        std::abs(tang_term) + std::abs(drift_term) +
                                        std::abs(zero_term) + std::abs(p.rhs[k]));
    if (!jac) continue;
    jac->lower[k] = lower;
    jac->upper[k] = upper;
    jac->diag[k] = diag + p.zero[k] * signed_power_slope(u[k], alpha);
  }
  return 16.0 * std::numeric_limits<double>::epsilon() * magnitude;
}

// Solves (I/dt - J) x = rhs in place (Thomas algorithm).
bool solve_shifted(const Tridiagonal& jac, double dt, std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> c(n);
  const double shift = 1.0 / dt;
  double denom = shift - jac.diag[0];
  if (denom == 0.0 || !std::isfinite(denom)) return false;
  c[0] = -jac.upper[0] / denom;
  x[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    const double a = -jac.lower[i];
    denom = shift - jac.diag[i] - a * c[i - 1];
    if (denom == 0.0 || !std::isfinite(denom)) return false;
    c[i] = i + 1 < n ? -jac.upper[i] / denom : 0.0;
    x[i] = (x[i] - a * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c[i] * x[i + 1];
  return true;
}

double default_dt(const NodeProblem& p, std::span<const double> u) {
  const double h = p.grid.spacing();
  double max_u1 = 0.0;
  for (int i = 1; i + 1 < p.grid.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    max_u1 = std::max(max_u1, std::abs(u[k + 1] - u[k - 1]) * (0.5 / h));
  }
  const double alpha = p.op.alpha();
  const double grad = alpha > 0.0 ? std::pow(max_u1 + 1.0, alpha) : 1.0;
  const double A = p.op.ellipticity_constants().second;
  return h * h / (2.0 * A * p.grid.dim() * grad);
}

struct RelaxResult {
  std::vector<double> u;
  double residual_sup = 0.0;
  double threshold = 0.0;
  int steps = 0;
  double dt = 0.0;
  bool converged = false;
  bool bound_violation = false;
};

// Implicit pseudo-time relaxation of u_t = G(u) - rhs: each step solves
// (I/dt - J) du = R(u). dt is halved when the residual grows (step rejected)
// and grows by max(1.1, R_old/R_new) when it shrinks. The tolerance is never
// tighter than the rounding floor of the residual.
RelaxResult relax(const NodeProblem& p, std::vector<double> u, double tol_abs, int max_steps,
                  double u_max, double dt) {
  RelaxResult out;
  std::vector<double> res;
  std::vector<double> trial_res;
  std::vector<double> step;
  Tridiagonal jac;
  if (!(dt > 0.0)) dt = default_dt(p, u);
  double floor = assemble(p, u, res, &jac);
  double norm = sup_abs(res);
  double merit = rms(res);
  constexpr double kMaxDt = 1e15;
  int halvings = 0;
  while (true) {
    if (!std::isfinite(norm)) break;
    if (norm <= std::max(tol_abs, floor)) {
      out.converged = true;
      break;
    }
    if (out.steps >= max_steps) break;
    ++out.steps;
    step = res;
    if (!solve_shifted(jac, dt, step)) {
      dt *= 0.5;
      if (++halvings > 60) break;
      continue;
    }
    std::vector<double> trial(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) trial[k] = u[k] + step[k];
    const double trial_floor = assemble(p, trial, trial_res, nullptr);
    const double trial_norm = sup_abs(trial_res);
    const double trial_merit = rms(trial_res);
    const bool sup_down = trial_norm < norm;
    if (!sup_down && !(trial_merit < merit) && !(trial_norm <= std::max(tol_abs, trial_floor))) {
      dt *= 0.5;
      if (++halvings > 60) break;
      continue;
    }
    halvings = 0;
    const double growth =
        sup_down ? std::max(1.1, trial_norm > 0.0 ? norm / trial_norm : 1e3) : 1.1;
    dt = std::min(dt * growth, kMaxDt);
    u = std::move(trial);
    if (sup_abs(u) > u_max) {
      out.bound_violation = true;
      floor = assemble(p, u, res, nullptr);
      norm = sup_abs(res);
      break;
    }
    floor = assemble(p, u, res, &jac);
    norm = sup_abs(res);
    merit = rms(res);
  }
  out.u = std::move(u);
  out.residual_sup = norm;
  out.threshold = std::max(tol_abs, floor);
  out.dt = dt;
  return out;
}

// For alpha != 0 a cold start can stall in a degenerate state (flat or
// zig-zag profile where the gradient factor vanishes or blows up). On failure
// retry by continuation in the gradient floor: a floor above every gradient
// makes the factor constant, then it is lowered tenfold per stage.
RelaxResult relax_robust(const NodeProblem& p, const std::vector<double>& u, double tol_abs,
                         int max_steps, double u_max, double dt) {
  RelaxResult direct = relax(p, u, tol_abs, max_steps, u_max, dt);
  if (direct.converged || direct.bound_violation || p.op.alpha() == 0.0) return direct;

  const double alpha = p.op.alpha();
  const double target = p.op.gradient_floor();
  const double amplitude =
      std::max({1.0, sup_abs(u), std::pow(sup_abs(p.rhs), 1.0 / (alpha + 1.0))});
  double delta = 10.0 * amplitude / p.grid.radius();
  NodeProblem stage = p;
  std::vector<double> v = u;
  int steps = direct.steps;
  while (delta > target) {
    stage.op = p.op.with_gradient_floor(delta);
    RelaxResult r = relax(stage, v, std::max(tol_abs, 1e-6 * amplitude), max_steps, u_max, 0.0);
    steps += r.steps;
    if (r.bound_violation) return r;
    v = std::move(r.u);
    delta *= 0.1;
  }
  RelaxResult out = relax(p, std::move(v), tol_abs, max_steps, u_max, 0.0);
  out.steps += steps;
  return out.converged || !(direct.residual_sup < out.residual_sup) ? out : direct;
}

double gradient_floor_for(const RadialGrid& grid, double scale) {
  return 1e-8 * (1.0 + scale / grid.radius());
}

NodeProblem make_problem(const EllipticOperator& op, const CoefficientField& coeff,
                         const RadialGrid& grid) {
  NodeProblem p{op, grid, sample(coeff.b, grid), sample(coeff.c, grid), {}, {}, {}};
  const auto n = static_cast<std::size_t>(grid.size());
  p.rhs.assign(n, 0.0);
  p.slopes.resize(n);
  p.central.resize(n);
  // Central differencing of the tangential drift keeps the u_{i-1}
  // coefficient nonnegative once i >= (N-1)(alpha+1) max h_t' / (2 min h_r').
  const double alpha_factor = std::max(op.alpha() + 1.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const SplitSlopes sl = split_slopes(op, grid.node(static_cast<int>(i)));
    p.slopes[i] = sl;
    const double t_max = std::max(sl.tangential_pos, sl.tangential_neg);
    const double r_min = std::min(sl.radial_pos, sl.radial_neg);
    p.central[i] = 2.0 * r_min * static_cast<double>(i) >=
                   (grid.dim() - 1) * alpha_factor * t_max;
  }
  return p;
}

}  // namespace

GridFunction residual(const EllipticOperator& op, const CoefficientField& coeff, double lambda,
                      const RadialProfile& g, const GridFunction& u) {
  NodeProblem p = make_problem(op, coeff, u.grid());
  for (double& z : p.zero) z += lambda;
  p.rhs = sample(g, u.grid());
  std::vector<double> res;
  assemble(p, u.values(), res, nullptr);
  return GridFunction(u.grid(), std::move(res));
}

SolveReport solve_neumann(const EllipticOperator& op, const CoefficientField& coeff,
                          double lambda, const RadialProfile& g, const RadialGrid& grid,
                          const SolveOptions& opts) {
  NodeProblem p = make_problem(op, coeff, grid);
  double c0 = std::numeric_limits<double>::infinity();
  std::vector<int> offending;
  for (int i = 0; i < grid.size(); ++i) {
    double& z = p.zero[static_cast<std::size_t>(i)];
    z += lambda;
    if (!(z < 0.0)) offending.push_back(i);
    c0 = std::min(c0, -z);
  }
  if (!offending.empty()) {
    std::ostringstream os;
    os << "solve_neumann: c + lambda must be < 0 at every node; violated at " << offending.size()
       << " node(s):";
    for (std::size_t j = 0; j < offending.size() && j < 10; ++j) {
      const int i = offending[j];
      os << " r=" << grid.node(i) << " (c+lambda=" << p.zero[static_cast<std::size_t>(i)] << ")";
    }
    if (offending.size() > 10) os << " ...";
    throw PreconditionError(os.str());
  }
  p.rhs = sample(g, grid);
  const double g_sup = sup_abs(p.rhs);
  const double inv_deg = 1.0 / (op.alpha() + 1.0);
  const double barrier = std::pow(g_sup / c0, inv_deg);
  p.op = op.with_gradient_floor(gradient_floor_for(grid, barrier));

  std::vector<double> start(static_cast<std::size_t>(grid.size()), 0.0);
  if (opts.initial_guess) {
    if (!(opts.initial_guess->grid() == grid))
      throw std::invalid_argument("solve_neumann: initial guess lives on a different grid");
    const auto v = opts.initial_guess->values();
    start.assign(v.begin(), v.end());
  }
  const double scale = std::max(1.0, g_sup);
  RelaxResult r = relax_robust(p, start, opts.tol * scale, opts.max_steps, opts.u_max,
                               opts.dt_initial);

  SolveReport report{GridFunction(grid, std::move(r.u))};
  report.residual_sup = r.residual_sup;
  report.residual_scale = scale;
  report.tolerance = r.threshold;
  report.iterations = r.steps;
  report.dt = r.dt;
  report.bound_violation = r.bound_violation;
  report.converged = r.converged && !r.bound_violation;
  report.barrier_bound = barrier + std::pow(opts.tol, inv_deg);
  report.within_barrier = report.solution.sup_norm() <= report.barrier_bound;
  return report;
}

std::string to_string(IterationVerdict v) {
  switch (v) {
    case IterationVerdict::converged:
      return "converged";
    case IterationVerdict::unbounded:
      return "unbounded";
    case IterationVerdict::max_iter:
      return "max_iter";
  }
  return "unknown";
}

std::string to_string(IterationCertificate c) {
  switch (c) {
    case IterationCertificate::none:
      return "none";
    case IterationCertificate::fixed_point:
      return "fixed_point";
    case IterationCertificate::growth:
      return "growth";
  }
  return "unknown";
}

bool IterationReport::all_monotone() const {
  return std::all_of(monotone.begin(), monotone.end(), [](std::uint8_t f) { return f != 0; });
}

IterationReport monotone_iteration(const EllipticOperator& op, const CoefficientField& coeff,
                                   double lambda, const RadialProfile& g, const RadialGrid& grid,
                                   const IterationOptions& opts) {
  const std::vector<double> gv = sample(g, grid);
  const bool nonpositive = std::all_of(gv.begin(), gv.end(), [](double x) { return x <= 0.0; });
  const bool nonnegative = std::all_of(gv.begin(), gv.end(), [](double x) { return x >= 0.0; });
  if (!nonpositive && !nonnegative)
    throw PreconditionError("monotone_iteration: g must not change sign (g <= 0, or g >= 0 for the mirror run)");
  const int direction = nonpositive ? 1 : -1;
  return monotone_iteration_from(op, coeff, lambda, g, GridFunction(grid, 0.0), direction, opts);
}

IterationReport monotone_iteration_from(const EllipticOperator& op,
                                        const CoefficientField& coeff, double lambda,
                                        const RadialProfile& g, const GridFunction& start,
                                        int direction, const IterationOptions& opts) {
  if (direction != 1 && direction != -1)
    throw std::invalid_argument("monotone_iteration: direction must be +1 or -1");
  const RadialGrid& grid = start.grid();
  const std::size_t n = static_cast<std::size_t>(grid.size());
  const std::vector<double> gv = sample(g, grid);
  const std::vector<double> cv = sample(coeff.c, grid);
  const double shift = sup_abs(cv) + 1.0;
  const double inner_tol = opts.tol / 10.0;
  const double alpha = op.alpha();

  // Shifted problem: zero-order coefficient c - K, right side rebuilt per step.
  NodeProblem shifted = make_problem(op, coeff, grid);
  for (double& z : shifted.zero) z -= shift;
  // Unshifted problem used by the fixed-point certificate.
  NodeProblem plain = make_problem(op, coeff, grid);
  for (double& z : plain.zero) z += lambda;
  plain.rhs = gv;

  const double g_sup = sup_abs(gv);
  const double floor = gradient_floor_for(grid, std::pow(g_sup, 1.0 / (alpha + 1.0)));
  shifted.op = op.with_gradient_floor(floor);
  plain.op = shifted.op;

  // The growth certificate needs T >= T0, i.e. direction * g <= 0, and
  // iterates on the far side of zero from the start.
  const bool growth_allowed =
      std::all_of(gv.begin(), gv.end(), [&](double x) { return direction * x <= 0.0; }) &&
      std::all_of(start.values().begin(), start.values().end(),
                  [&](double x) { return direction * x >= 0.0; });

  IterationReport report;
  report.final_iterate = start;
  report.direction = direction;
  std::vector<double> current(start.values().begin(), start.values().end());
  report.sup_norms.push_back(sup_abs(current));
  double dt = opts.inner.dt_initial;
  double previous_change = std::numeric_limits<double>::infinity();
  int next_certificate = opts.certificate_interval;
  int certificate_gap = opts.certificate_interval;

  auto shifted_solve = [&](const std::vector<double>& source, std::vector<double> init,
                           int step) {
    for (std::size_t k = 0; k < n; ++k)
      shifted.rhs[k] = gv[k] - (lambda + shift) * signed_power(source[k], alpha);
    const double scale = std::max(1.0, sup_abs(shifted.rhs));
    RelaxResult r = relax_robust(shifted, init, inner_tol * scale, opts.inner.max_steps,
                                 std::numeric_limits<double>::infinity(), dt);
    if (!r.converged) {
      std::ostringstream os;
      os << "monotone_iteration: inner solve failed at step " << step
         << " (residual " << r.residual_sup << ", tolerance " << inner_tol * scale << ")";
      throw IterationError(os.str(), step);
    }
    return r;
  };

  for (int step = 1; step <= opts.max_iter; ++step) {
    RelaxResult next = shifted_solve(current, current, step);
    dt = next.dt;
    double change = 0.0;
    bool monotone = true;
    const double next_sup = sup_abs(next.u);
    const double slack = opts.tol * std::max(1.0, next_sup);
    for (std::size_t k = 0; k < n; ++k) {
      const double d = next.u[k] - current[k];
      change = std::max(change, std::abs(d));
      if (direction * d < -slack) monotone = false;
    }
    report.monotone.push_back(monotone ? 1 : 0);
    report.sup_norms.push_back(next_sup);
    std::vector<double> increment(n);
    for (std::size_t k = 0; k < n; ++k) increment[k] = next.u[k] - current[k];
    current = std::move(next.u);

    if (!std::isfinite(next_sup) || next_sup > opts.u_max) {
      report.verdict = IterationVerdict::unbounded;
      break;
    }
    if (change < opts.tol * std::max(1.0, next_sup)) {
      report.verdict = IterationVerdict::converged;
      break;
    }

    if (opts.early_certificates && step >= next_certificate) {
      bool decided = false;
      if (change < previous_change) {
        // A solution of the unshifted problem above the iterate bounds the
        // whole sequence, since the shifted map is order preserving.
        const double scale = std::max(1.0, g_sup);
        RelaxResult fixed = relax(plain, current, inner_tol * scale, 200,
                                  std::numeric_limits<double>::infinity(), dt);
        if (fixed.converged && !fixed.bound_violation) {
          const double fslack = opts.tol * std::max(1.0, sup_abs(fixed.u));
          const bool above = std::equal(
              fixed.u.begin(), fixed.u.end(), current.begin(),
              [&](double f, double c) { return direction * (f - c) >= -fslack; });
          if (above) {
            current = std::move(fixed.u);
            report.sup_norms.push_back(sup_abs(current));
            report.verdict = IterationVerdict::converged;
            report.certificate = IterationCertificate::fixed_point;
            decided = true;
          }
        }
      } else if (growth_allowed && lambda + shift > 0.0) {
        // w = normalized increment; T0(w) >= theta w with theta > 1 forces
        // geometric growth of every later iterate.
        const double inc_sup = sup_abs(increment);
        const bool strictly = inc_sup > 0.0 &&
            std::all_of(increment.begin(), increment.end(),
                        [&](double d) { return direction * d > 0.0; });
        if (strictly) {
          std::vector<double> w(n);
          for (std::size_t k = 0; k < n; ++k) w[k] = increment[k] / inc_sup;
          for (std::size_t k = 0; k < n; ++k)
            shifted.rhs[k] = -(lambda + shift) * signed_power(w[k], alpha);
          const double scale = std::max(1.0, sup_abs(shifted.rhs));
          RelaxResult image = relax(shifted, w, inner_tol * scale, opts.inner.max_steps,
                                    std::numeric_limits<double>::infinity(), dt);
          if (image.converged) {
            double theta = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < n; ++k) theta = std::min(theta, image.u[k] / w[k]);
            if (theta > 1.0 + 1e-7) {
              report.verdict = IterationVerdict::unbounded;
              report.certificate = IterationCertificate::growth;
              report.growth_factor = theta;
              decided = true;
            }
          }
        }
      }
      if (decided) break;
      certificate_gap = std::min(2 * certificate_gap, 1024);
      next_certificate = step + certificate_gap;
    }
    previous_change = change;
  }
  report.final_iterate = GridFunction(grid, std::move(current));
  return report;
}

}  // namespace radeig
