#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "radeig/profile.hpp"

namespace radeig {

enum class OperatorKind { pucci_plus, pucci_minus, p_laplacian, anisotropic };
enum class PucciSign { plus, minus };

std::string_view to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(std::string_view name);

/// One eigenvalue of a symmetric matrix together with its multiplicity.
struct EigenvalueBlock {
  double value = 0.0;
  int multiplicity = 1;
};

/// Hoelder data of (F3)/(F4). Carried for documentation and profile checks
/// only; evaluation never reads it.
struct RegularityMeta {
  double theta = 1.0;
  double nu = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;
};

/// A fully nonlinear operator F(x, Du, D^2u), homogeneous of degree alpha in
/// the gradient and of degree one in the Hessian, restricted to radial
/// functions. Immutable once built; construct through the named factories,
/// which validate the kind-specific parameters.
class EllipticOperator {
 public:
  /// |Du|^alpha M^{+/-}_{a,A}(D^2u).
  static EllipticOperator pucci(PucciSign sign, double a, double A, double alpha);
  /// Pucci minus with a = A = 1, alpha = 0.
  static EllipticOperator laplacian();
  /// div(|Du|^{p-2} Du); alpha = p - 2, (a, A) = (min(1,p-1), max(1,p-1)).
  static EllipticOperator p_laplacian(double p);
  /// |Du|^{q-2} tr(B1 D^2u) + c0 |Du|^{q-4} <D^2u B2 Du, B2 Du> with
  /// B1 = b1(r) I and B2 = b2(r) I. The bounds a <= b1 <= A and b2^2 <= a
  /// are checked on [0, validation_radius].
  static EllipticOperator anisotropic(double a, double A, double q, double c0, RadialProfile b1,
                                      RadialProfile b2, double validation_radius = 1.0);

  EllipticOperator with_regularity(RegularityMeta meta) const;
  EllipticOperator with_gradient_floor(double delta) const;

  OperatorKind kind() const { return kind_; }
  double a() const { return a_; }
  double A() const { return A_; }
  double alpha() const { return alpha_; }
  double p() const { return p_; }
  double c0() const { return c0_; }
  double gradient_floor() const { return delta_; }
  const RadialProfile& b1() const { return b1_; }
  const RadialProfile& b2() const { return b2_; }
  const std::optional<RegularityMeta>& regularity() const { return regularity_; }
  /// Radii [0, profile_radius()] on which the coefficient profiles were validated.
  double profile_radius() const { return profile_radius_; }

  /// Constants (lo, hi) for which (F2) holds for this operator.
  std::pair<double, double> ellipticity_constants() const;

 private:
  EllipticOperator() = default;

  OperatorKind kind_ = OperatorKind::pucci_minus;
  double a_ = 1.0;
  double A_ = 1.0;
  double alpha_ = 0.0;
  double p_ = 2.0;
  double c0_ = 0.0;
  double delta_ = 1e-8;
  double profile_radius_ = 1.0;
  RadialProfile b1_;
  RadialProfile b2_;
  std::optional<RegularityMeta> regularity_;
};

/// Second-order data of a radial function at radius r: the radial Hessian
/// eigenvalue u2 (multiplicity 1) and the tangential one (multiplicity N-1).
struct RadialJet {
  double r = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  double tangential = 0.0;
};

/// Builds the jet of u(|x|); at r = 0 the tangential eigenvalue u1/r is
/// replaced by its symmetric limit u2.
RadialJet make_radial_jet(double r, double u1, double u2);

/// Eigenvalues of D^2 u(|x|): [(u2, 1), (u1/r, N-1)]. Throws for r <= 0.
std::vector<EigenvalueBlock> radial_hessian_eigs(double u1, double u2, double r, int dim);

/// minus: a*sum(l+) - A*sum(l-);  plus: A*sum(l+) - a*sum(l-).
double pucci_extremal(std::span<const EigenvalueBlock> eigs, double a, double A, PucciSign sign);

/// max(|u1|, delta).
inline double regularized_gradient(double u1, double delta) {
  const double g = u1 < 0 ? -u1 : u1;
  return g > delta ? g : delta;
}

/// |u1|_delta^alpha and its derivative in u1 (zero inside the floor).
struct GradientPower {
  double value = 1.0;
  double derivative = 0.0;
};
GradientPower gradient_power(double u1, double alpha, double delta);

/// Every supported F factors as
///   phi(u1) [h_r(u2) + (N-1) h_t(tangential)],  phi = |u1|_delta^alpha,
/// with h(x) = pos * x for x > 0 and neg * x otherwise. These are the slopes
/// of h_r and h_t at radius r.
struct SplitSlopes {
  double radial_pos = 1.0;
  double radial_neg = 1.0;
  double tangential_pos = 1.0;
  double tangential_neg = 1.0;

  double radial(double x) const { return x > 0.0 ? radial_pos : radial_neg; }
  double tangential(double x) const { return x > 0.0 ? tangential_pos : tangential_neg; }
};
SplitSlopes split_slopes(const EllipticOperator& op, double r);

/// sign(u) |u|^{alpha+1}, i.e. |u|^alpha u without NaNs for fractional alpha.
double signed_power(double u, double alpha);

/// F on a radial jet.
double eval_F(const EllipticOperator& op, int dim, const RadialJet& jet);

/// F at radius r > 0 from the first and second radial derivatives.
double eval_radial_F(const EllipticOperator& op, int dim, double r, double u1, double u2);

/// Value of F and its partial derivatives in (u1, u2, tangential).
struct FLinearization {
  double value = 0.0;
  double d_u1 = 0.0;
  double d_u2 = 0.0;
  double d_tangential = 0.0;
};
FLinearization linearize_F(const EllipticOperator& op, int dim, const RadialJet& jet);

/// F + b_r u1 |u1|^alpha + (c + lambda) |u|^alpha u, with b and c already
/// evaluated at the jet's radius. g is subtracted by the caller.
double eval_G(const EllipticOperator& op, int dim, const RadialJet& jet, double u, double b,
              double c, double lambda);

double eval_radial_G(const EllipticOperator& op, int dim, const CoefficientField& coeff,
                     double r, double u, double u1, double u2, double lambda);

struct PropertyFailure {
  RadialJet jet;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string detail;
};

struct PropertyReport {
  std::string property;
  std::string kind;
  int samples = 0;
  int checked = 0;
  int skipped = 0;
  double max_rel_error = 0.0;
  std::vector<PropertyFailure> failures;

  bool passed() const { return failures.empty() && checked > 0; }
};

/// (F1): F(t p, mu X) = |t|^alpha mu F(p, X), to 1e-12 relative. Samples
/// whose scaled gradient falls below the regularization floor are skipped.
PropertyReport check_homogeneity(const EllipticOperator& op, int dim, int sample_count,
                                 std::uint64_t seed = 1);

/// (F2): lo |p|^alpha tr N <= F(p, M+N) - F(p, M) <= hi |p|^alpha tr N for
/// nonnegative radial perturbations N, to 1e-10 relative.
PropertyReport check_ellipticity(const EllipticOperator& op, int dim, int sample_count,
                                 std::uint64_t seed = 1);

/// max_{i != j} |f(r_i) - f(r_j)| / |r_i - r_j|^exponent.
double holder_quotient(const RadialProfile& f, std::span<const double> radii, double exponent);

}  // namespace radeig
