#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "radeig/operators.hpp"
#include "radeig/profile.hpp"
#include "radeig/radial_domain.hpp"

namespace radeig {

/// A precondition of a solver entry point does not hold for the data.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An inner solve of an iteration failed; carries the outer step index.
class IterationError : public std::runtime_error {
 public:
  IterationError(const std::string& what, int step) : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_;
};

struct SolveOptions {
  /// Stop when sup|residual| <= tol * max(1, sup|g|).
  double tol = 1e-9;
  int max_steps = 4000;
  /// |u|_inf above this flags a bound violation.
  double u_max = 1e6;
  /// Initial pseudo-time step; <= 0 selects h^2 / (2 A N (max|u1| + 1)^alpha).
  double dt_initial = 0.0;
  std::optional<GridFunction> initial_guess;
};

struct SolveReport {
  GridFunction solution;
  double residual_sup = 0.0;
  /// Residuals are compared against tol * residual_scale.
  double residual_scale = 1.0;
  /// Threshold actually applied: max(tol * residual_scale, rounding floor of
  /// the residual at the final iterate). converged => residual_sup <= tolerance.
  double tolerance = 0.0;
  int iterations = 0;
  double dt = 0.0;
  bool converged = false;
  bool bound_violation = false;
  /// (|g|_inf / c0)^(1/(alpha+1)) + tol^(1/(alpha+1)), checked after the solve.
  double barrier_bound = 0.0;
  bool within_barrier = false;
};

/// Node-wise G(u) - g with the Neumann and symmetry stencils at the ends.
GridFunction residual(const EllipticOperator& op, const CoefficientField& coeff, double lambda,
                      const RadialProfile& g, const GridFunction& u);

/// Solves F + b Du|Du|^alpha + (c + lambda)|u|^alpha u = g with u'(R) = 0 by
/// implicit pseudo-time relaxation of u_t = G(u) - g. Requires
/// c(r_i) + lambda <= -c0 < 0 at every node; throws PreconditionError with
/// the offending nodes otherwise.
SolveReport solve_neumann(const EllipticOperator& op, const CoefficientField& coeff,
                          double lambda, const RadialProfile& g, const RadialGrid& grid,
                          const SolveOptions& opts = {});

enum class IterationVerdict { converged, unbounded, max_iter };
enum class IterationCertificate { none, fixed_point, growth };

std::string to_string(IterationVerdict v);
std::string to_string(IterationCertificate c);

struct IterationOptions {
  /// Stop when |u_{n+1} - u_n|_inf < tol * max(1, |u_{n+1}|_inf).
  double tol = 1e-9;
  int max_iter = 200000;
  /// Blow-up threshold U_max.
  double u_max = 1e6;
  /// Try the fixed-point and growth certificates during the run.
  bool early_certificates = false;
  int certificate_interval = 16;
  /// Inner solves; their tol is forced to tol / 10.
  SolveOptions inner;
};

struct IterationReport {
  /// |u_n|_inf for n = 1, 2, ... (u_1 is the starting point).
  std::vector<double> sup_norms;
  GridFunction final_iterate;
  IterationVerdict verdict = IterationVerdict::max_iter;
  IterationCertificate certificate = IterationCertificate::none;
  /// monotone[n] is true when u_{n+2} moved in the iteration direction
  /// from u_{n+1} at every node.
  std::vector<std::uint8_t> monotone;
  /// theta of the growth certificate (T0(w) >= theta w), else 0.
  double growth_factor = 0.0;
  /// +1 for nondecreasing iterates (g <= 0), -1 for the mirrored run.
  int direction = 1;

  int steps() const { return static_cast<int>(monotone.size()); }
  bool all_monotone() const;
};

/// u_1 = 0, u_{n+1} solves the shifted problem
///   F + b.. + (c - |c|_inf - 1)|u|^alpha u = g - (lambda + |c|_inf + 1)|u_n|^alpha u_n.
/// g <= 0 gives nondecreasing nonnegative iterates; g >= 0 runs the mirror
/// image (nonincreasing, nonpositive). Sign-changing g is rejected; use
/// monotone_iteration_from with a sub/supersolution start instead.
IterationReport monotone_iteration(const EllipticOperator& op, const CoefficientField& coeff,
                                   double lambda, const RadialProfile& g, const RadialGrid& grid,
                                   const IterationOptions& opts = {});

/// Same iteration from an arbitrary start; `direction` (+1 / -1) is the
/// order in which iterates are expected to move.
IterationReport monotone_iteration_from(const EllipticOperator& op,
                                        const CoefficientField& coeff, double lambda,
                                        const RadialProfile& g, const GridFunction& start,
                                        int direction, const IterationOptions& opts = {});

}  // namespace radeig
