#pragma once

#include <optional>
#include <string>

#include "radeig/operators.hpp"
#include "radeig/profile.hpp"
#include "radeig/radial_domain.hpp"
#include "radeig/solver.hpp"

namespace radeig {

/// positive: the eigenvalue defined through positive supersolutions;
/// negative: its mirror defined through negative subsolutions.
enum class EigenSign { positive, negative };

std::string to_string(EigenSign s);

struct EigenOptions {
  /// Bisection stops once hi - lo <= width; default 1e-3 (1 + |c|_inf).
  std::optional<double> bracket_width;
  /// Tolerance on the eigen-equation residual; default 10 * width.
  std::optional<double> eig_residual_tol;
  /// Magnitude s of the probe right side g = -s (or +s for the mirror).
  double probe_scale = 1.0;
  /// Probe runs; early certificates are always switched on.
  IterationOptions iteration;
};

struct EigenEstimate {
  /// Probe at lambda_lo converged, probe at lambda_hi blew up.
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  /// sup-norm 1; positive for EigenSign::positive, negative otherwise.
  GridFunction eigenfunction;
  /// sup |F + b.. + (c + lambda_mid)|phi|^alpha phi|, lambda_mid the midpoint.
  double residual_sup = 0.0;
  bool residual_within_tol = false;
  EigenSign sign = EigenSign::positive;
  double bracket_width = 0.0;
  double c_sup = 0.0;
  int probes = 0;

  double midpoint() const { return 0.5 * (lambda_lo + lambda_hi); }
};

/// Bisection (split slightly off centre) on [-|c|_inf - 1, |c|_inf + 1]: lambda lies below the threshold
/// exactly when the monotone iteration with g = -1 stays bounded.
EigenEstimate lambda_up(const EllipticOperator& op, const CoefficientField& coeff,
                        const RadialGrid& grid, const EigenOptions& opts = {});

/// Mirror of lambda_up with g = +1 and nonpositive iterates.
EigenEstimate lambda_down(const EllipticOperator& op, const CoefficientField& coeff,
                          const RadialGrid& grid, const EigenOptions& opts = {});

struct EigenfunctionReport {
  GridFunction eigenfunction;
  double residual_sup = 0.0;
  bool within_tol = false;
  /// sup-norm of the un-normalized iterate.
  double amplitude = 0.0;
};

/// Normalizes the limit of the monotone iteration at `lambda_lo` (which
/// must converge) and measures the eigen residual at `lambda_mid`.
EigenfunctionReport eigenfunction_up(const EllipticOperator& op, const CoefficientField& coeff,
                                     const RadialGrid& grid, double lambda_lo,
                                     double lambda_mid, const EigenOptions& opts = {});
EigenfunctionReport eigenfunction_down(const EllipticOperator& op,
                                       const CoefficientField& coeff, const RadialGrid& grid,
                                       double lambda_lo, double lambda_mid,
                                       const EigenOptions& opts = {});

struct GeneralSolveOptions {
  IterationOptions iteration;
  /// min of the two lower bracket ends; computed when absent.
  std::optional<double> eigen_floor;
  EigenOptions eigen;
};

struct GeneralSolveReport {
  SolveReport result;
  /// Negative solution for |g|_inf and positive solution for -|g|_inf.
  GridFunction lower;
  GridFunction upper;
  bool sandwich_ok = false;
  double eigen_floor = 0.0;
  IterationReport iteration;
};

/// Sign-changing g with lambda below both principal eigenvalues: sandwich
/// the monotone iteration between the solutions for +|g|_inf and -|g|_inf.
GeneralSolveReport solve_general(const EllipticOperator& op, const CoefficientField& coeff,
                                 double lambda, const RadialProfile& g, const RadialGrid& grid,
                                 const GeneralSolveOptions& opts = {});

}  // namespace radeig
