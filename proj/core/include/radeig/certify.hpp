#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "radeig/profile.hpp"
#include "radeig/radial_domain.hpp"

namespace radeig {

/// Parameters of the explicit three-branch supersolution on B(0, R) for a
/// zero-order coefficient that is positive near the centre.
///
/// Regions: inner [0, rho], middle (rho, R - eps], outer (R - eps, R].
/// E = k / (R - rho - eps'),  D = (E/4)(R - rho - eps)^2 + E C + eps.
struct SupersolutionParams {
  int dim = 2;
  double a = 1.0;
  double A = 1.0;
  double alpha = 0.0;
  double R = 1.0;
  double rho = 0.0;
  double eps = 0.0;
  double eps_prime = 0.0;
  double k = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double E = 0.0;
  double C = 0.0;
  double D = 0.0;
};

/// Valid inputs for which no supersolution of the three-branch form exists
/// (beta2 at or above the admissible bound, or no shell width works).
class InfeasibleParams : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Upper bound on beta2 in the eps, eps' -> 0 limit:
///   k^{a+1} e^{-(a+1) k rho} a (k + (N-1)/rho) / (D_lim + 1 - e^{-k rho})^{a+1}
/// with D_lim = k{(R-rho)/4 + [(2NAR - (N-1)a(R+rho)) / (beta1 R (R-rho))]^{1/(a+1)}}.
double beta2_upper_bound(int dim, double a, double A, double alpha, double R, double rho,
                         double k, double beta1);

/// D_lim above.
double limiting_D(int dim, double a, double A, double alpha, double R, double rho, double k,
                  double beta1);

/// The same bound with the exact D of `p` in the denominator.
double beta2_exact_bound(const SupersolutionParams& p);

/// Fills E, C, D for explicit shell widths 0 < eps < eps' < R - rho.
SupersolutionParams params_for_shells(int dim, double a, double A, double alpha, double R,
                                      double rho, double k, double beta1, double beta2,
                                      double eps, double eps_prime);

/// Rejects beta2 >= beta2_upper_bound, then halves eps' from (R - rho)/4
/// (eps = eps'/2) until beta2 is below the exact-D bound and the positivity
/// and empty-jet conditions hold. Throws InfeasibleParams when that fails and
/// std::invalid_argument for out-of-range inputs.
SupersolutionParams build_params(int dim, double a, double A, double alpha, double R,
                                 double rho, double k, double beta1, double beta2);

/// The supersolution v with exact radial derivatives on each branch.
class PiecewiseRadialFn {
 public:
  enum class Region { inner, middle, outer };

  struct Value {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
  };

  explicit PiecewiseRadialFn(SupersolutionParams params, double offset = 0.0);

  Value eval(double r) const;
  double operator()(double r) const { return eval(r).v; }
  Region region(double r) const;
  const SupersolutionParams& params() const { return params_; }

  /// {0, rho, R - eps}: radii where the second-order subjet is empty.
  std::array<double, 3> breakpoints() const;

  /// v + delta.
  PiecewiseRadialFn shifted(double delta) const { return PiecewiseRadialFn(params_, offset_ + delta); }

 private:
  SupersolutionParams params_;
  double offset_;
};

PiecewiseRadialFn build_supersolution(const SupersolutionParams& params);

/// A continuous c inside the admissible band: beta2/2 near the centre,
/// -beta1 on the middle region, -beta1/2 on the outer shell, with linear
/// ramps of width min(eps, rho)/4 placed inside [0, rho] and (R - eps, R].
RadialProfile default_c_band(const SupersolutionParams& params);

struct Certificate {
  SupersolutionParams params;
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  /// min over non-breakpoint nodes of -[F(Dv, D^2v) + c v^{alpha+1}] with F
  /// the maximal Pucci operator.
  double grid_margin = 0.0;
  double integral_c = 0.0;
  double min_v = 0.0;
  bool positive = false;
  bool band_ok = false;
  bool accept = false;
  std::vector<std::string> reasons;

  double min_margin() const;
  /// min(m1, m2, m3) / (sup v)^{alpha+1}: v is a positive supersolution for
  /// every lambda up to this value, so the principal eigenvalue is at least it.
  /// Zero unless accepted.
  double lambda_lower_bound() const;
};

/// Certificate carrying only the reason, for parameter sets rejected before
/// a supersolution could be built.
Certificate rejected_certificate(const SupersolutionParams& params, std::string reason);

/// Closed-form region margins plus a node-wise sweep on `grid`. Throws
/// std::invalid_argument when some region holds fewer than 20 nodes.
Certificate verify(const SupersolutionParams& params, const PiecewiseRadialFn& v,
                   const RadialProfile& c, const RadialGrid& grid);

/// Smallest k with a k^{alpha+2} - (A (N-1)/rho + |b|) k^{alpha+1} - |c| >= 1e-8.
double barrier_exponent(double a, double A, int dim, double rho, double b_sup, double c_sup,
                        double alpha);

/// min over rho < r < R of  M^-(D^2 phi)|D phi|^alpha - |b||D phi|^{alpha+1} - |c| phi^{alpha+1}
/// for phi = e^{-kr} - e^{-kR}; positive means phi is a strict subsolution.
double hopf_barrier_margin(double a, double A, int dim, double rho, double R, double b_sup,
                           double c_sup, double alpha, double k, int samples = 2000);

/// Volume of the unit ball in R^N.
double unit_ball_volume(int dim);

/// Trapezoid rule for the integral of c over B(0, R), in polar form
/// N omega_N r^{N-1} c(r) dr.
double integral_of_c(const RadialProfile& c, const RadialGrid& grid);

}  // namespace radeig
