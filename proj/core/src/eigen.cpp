#include "radeig/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace radeig {

namespace {

// Off-centre split: analytic eigenvalues tend to sit on dyadic points of the
// initial bracket, and exactly at the threshold the iterates grow only
// linearly, so neither convergence nor blow-up is certified in finite time.
constexpr double kSplit = 0.5 + 0.0625 / std::numbers::pi;

double c_sup_on(const CoefficientField& coeff, const RadialGrid& grid) {
  const auto r = grid.nodes();
  return coeff.c.sup_norm(r);
}

double width_for(const EigenOptions& opts, double c_sup) {
  const double w = opts.bracket_width.value_or(1e-3 * (1.0 + c_sup));
  if (!(w > 0.0)) throw std::invalid_argument("eigen: bracket width must be > 0");
  return w;
}

IterationOptions probe_options(const EigenOptions& opts) {
  IterationOptions it = opts.iteration;
  it.early_certificates = true;
  return it;
}

// direction +1 probes with g = -s (positive eigenvalue), -1 with g = +s.
IterationReport probe(const EllipticOperator& op, const CoefficientField& coeff,
                      const RadialGrid& grid, double lambda, int direction,
                      const EigenOptions& opts) {
  if (!(opts.probe_scale > 0.0)) throw std::invalid_argument("eigen: probe scale must be > 0");
  const RadialProfile g = RadialProfile::constant(-direction * opts.probe_scale);
  return monotone_iteration(op, coeff, lambda, g, grid, probe_options(opts));
}

EigenfunctionReport normalize(const EllipticOperator& op, const CoefficientField& coeff,
                              const IterationReport& run, double lambda_mid, double tol) {
  const GridFunction& u = run.final_iterate;
  const double amp = u.sup_norm();
  if (!(amp > 0.0)) throw std::runtime_error("eigen: limit iterate vanishes identically");
  std::vector<double> v(u.values().begin(), u.values().end());
  for (double& x : v) x /= amp;
  GridFunction phi(u.grid(), std::move(v));
  const CoefficientField eig_coeff{coeff.b, coeff.c, RadialProfile{}};
  const GridFunction res = residual(op, eig_coeff, lambda_mid, RadialProfile{}, phi);
  EigenfunctionReport out{std::move(phi)};
  out.residual_sup = res.sup_norm();
  out.within_tol = out.residual_sup <= tol;
  out.amplitude = amp;
  return out;
}

EigenfunctionReport eigenfunction(const EllipticOperator& op, const CoefficientField& coeff,
                                  const RadialGrid& grid, double lambda_lo, double lambda_mid,
                                  int direction, const EigenOptions& opts) {
  const double c_sup = c_sup_on(coeff, grid);
  const double w = width_for(opts, c_sup);
  const IterationReport run = probe(op, coeff, grid, lambda_lo, direction, opts);
  if (run.verdict != IterationVerdict::converged) {
    std::ostringstream os;
    os << "eigenfunction: monotone iteration at lambda = " << lambda_lo << " did not converge ("
       << to_string(run.verdict) << ")";
    throw std::runtime_error(os.str());
  }
  return normalize(op, coeff, run, lambda_mid, opts.eig_residual_tol.value_or(10.0 * w));
}

EigenEstimate bracket(const EllipticOperator& op, const CoefficientField& coeff,
                      const RadialGrid& grid, int direction, const EigenOptions& opts) {
  const double c_sup = c_sup_on(coeff, grid);
  const double w = width_for(opts, c_sup);
  EigenEstimate est;
  est.sign = direction > 0 ? EigenSign::positive : EigenSign::negative;
  est.bracket_width = w;
  est.c_sup = c_sup;

  double lo = -c_sup - 1.0;
  double hi = c_sup + 1.0;
  IterationReport lo_run = probe(op, coeff, grid, lo, direction, opts);
  ++est.probes;
  if (lo_run.verdict != IterationVerdict::converged) {
    std::ostringstream os;
    os << "eigen: monotone iteration does not converge at the lower end lambda = " << lo
       << " (" << to_string(lo_run.verdict) << "); the configuration is inconsistent";
    throw std::runtime_error(os.str());
  }
  const IterationReport hi_run = probe(op, coeff, grid, hi, direction, opts);
  ++est.probes;
  if (hi_run.verdict != IterationVerdict::unbounded) {
    std::ostringstream os;
    os << "eigen: monotone iteration stays bounded at the upper end lambda = " << hi
       << " (" << to_string(hi_run.verdict) << ")";
    throw std::runtime_error(os.str());
  }
  while (hi - lo > w) {
    const double mid = lo + kSplit * (hi - lo);
    IterationReport run = probe(op, coeff, grid, mid, direction, opts);
    ++est.probes;
    if (run.verdict == IterationVerdict::converged) {
      lo = mid;
      lo_run = std::move(run);
    } else if (run.verdict == IterationVerdict::unbounded) {
      hi = mid;
    } else {
      std::ostringstream os;
      os << "eigen: probe at lambda = " << mid << " undecided after " << run.steps()
         << " iterations; raise iteration.max_iter";
      throw std::runtime_error(os.str());
    }
  }
  est.lambda_lo = lo;
  est.lambda_hi = hi;
  EigenfunctionReport ef =
      normalize(op, coeff, lo_run, est.midpoint(), opts.eig_residual_tol.value_or(10.0 * w));
  est.eigenfunction = std::move(ef.eigenfunction);
  est.residual_sup = ef.residual_sup;
  est.residual_within_tol = ef.within_tol;
  return est;
}

}  // namespace

std::string to_string(EigenSign s) { return s == EigenSign::positive ? "positive" : "negative"; }

EigenEstimate lambda_up(const EllipticOperator& op, const CoefficientField& coeff,
                        const RadialGrid& grid, const EigenOptions& opts) {
  return bracket(op, coeff, grid, 1, opts);
}

EigenEstimate lambda_down(const EllipticOperator& op, const CoefficientField& coeff,
                          const RadialGrid& grid, const EigenOptions& opts) {
  return bracket(op, coeff, grid, -1, opts);
}

EigenfunctionReport eigenfunction_up(const EllipticOperator& op, const CoefficientField& coeff,
                                     const RadialGrid& grid, double lambda_lo,
                                     double lambda_mid, const EigenOptions& opts) {
  return eigenfunction(op, coeff, grid, lambda_lo, lambda_mid, 1, opts);
}

EigenfunctionReport eigenfunction_down(const EllipticOperator& op,
                                       const CoefficientField& coeff, const RadialGrid& grid,
                                       double lambda_lo, double lambda_mid,
                                       const EigenOptions& opts) {
  return eigenfunction(op, coeff, grid, lambda_lo, lambda_mid, -1, opts);
}

GeneralSolveReport solve_general(const EllipticOperator& op, const CoefficientField& coeff,
                                 double lambda, const RadialProfile& g, const RadialGrid& grid,
                                 const GeneralSolveOptions& opts) {
  double floor_value = 0.0;
  if (opts.eigen_floor) {
    floor_value = *opts.eigen_floor;
  } else {
    const EigenEstimate up = lambda_up(op, coeff, grid, opts.eigen);
    const EigenEstimate down = lambda_down(op, coeff, grid, opts.eigen);
    floor_value = std::min(up.lambda_lo, down.lambda_lo);
  }
  if (!(lambda < floor_value)) {
    std::ostringstream os;
    os << "solve_general: lambda = " << lambda << " must lie below both principal eigenvalues ("
       << floor_value << ")";
    throw PreconditionError(os.str());
  }

  IterationOptions it = opts.iteration;
  it.early_certificates = true;
  const double g_sup = g.sup_norm(grid.nodes());
  const IterationReport low =
      monotone_iteration(op, coeff, lambda, RadialProfile::constant(g_sup), grid, it);
  const IterationReport high =
      monotone_iteration(op, coeff, lambda, RadialProfile::constant(-g_sup), grid, it);
  if (low.verdict != IterationVerdict::converged || high.verdict != IterationVerdict::converged)
    throw std::runtime_error("solve_general: barrier solutions for +/-|g|_inf did not converge");

  IterationReport run =
      monotone_iteration_from(op, coeff, lambda, g, low.final_iterate, 1, it);

  GeneralSolveReport out;
  out.result.solution = run.final_iterate;
  out.lower = low.final_iterate;
  out.upper = high.final_iterate;
  out.eigen_floor = floor_value;
  const GridFunction res = residual(op, coeff, lambda, g, run.final_iterate);
  out.result.residual_sup = res.sup_norm();
  out.result.residual_scale = std::max(1.0, g_sup);
  out.result.iterations = run.steps();
  out.result.converged = run.verdict == IterationVerdict::converged;
  out.result.bound_violation = run.verdict == IterationVerdict::unbounded;
  const double slack = it.tol * std::max(1.0, high.final_iterate.sup_norm());
  bool inside = true;
  for (int i = 0; i < grid.size(); ++i) {
    const double u = run.final_iterate[i];
    if (u < low.final_iterate[i] - slack || u > high.final_iterate[i] + slack) inside = false;
  }
  out.sandwich_ok = inside;
  out.result.within_barrier = inside;
  out.iteration = std::move(run);
  return out;
}

}  // namespace radeig
