#include "radeig/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace radeig {

namespace {

constexpr int kProfileSamples = 1001;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("operator: " + what);
}

// Slope of the one-dimensional Pucci map x -> M(x) on the side of x.
double pucci_slope(double x, double a, double A, PucciSign sign) {
  if (sign == PucciSign::plus) return x > 0.0 ? A : a;
  return x > 0.0 ? a : A;
}

double pucci_scalar(double x, double a, double A, PucciSign sign) {
  return pucci_slope(x, a, A, sign) * x;
}

PucciSign sign_of(OperatorKind kind) {
  return kind == OperatorKind::pucci_plus ? PucciSign::plus : PucciSign::minus;
}

GradientPower gradient_factor(double u1, double alpha, double delta) {
  return gradient_power(u1, alpha, delta);
}

}  // namespace

GradientPower gradient_power(double u1, double alpha, double delta) {
  if (alpha == 0.0) return {1.0, 0.0};
  const double g = std::abs(u1);
  if (g <= delta) return {std::pow(delta, alpha), 0.0};
  const double value = std::pow(g, alpha);
  return {value, alpha * value / u1};
}

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::pucci_plus:
      return "pucci_plus";
    case OperatorKind::pucci_minus:
      return "pucci_minus";
    case OperatorKind::p_laplacian:
      return "p_laplacian";
    case OperatorKind::anisotropic:
      return "anisotropic";
  }
  return "unknown";
}

OperatorKind operator_kind_from_string(std::string_view name) {
  if (name == "pucci_plus") return OperatorKind::pucci_plus;
  if (name == "pucci_minus") return OperatorKind::pucci_minus;
  if (name == "p_laplacian") return OperatorKind::p_laplacian;
  if (name == "anisotropic") return OperatorKind::anisotropic;
  throw std::invalid_argument("operator: unknown kind '" + std::string(name) + "'");
}

EllipticOperator EllipticOperator::pucci(PucciSign sign, double a, double A, double alpha) {
  require(a > 0.0 && std::isfinite(a), "a must be > 0");
  require(A >= a && std::isfinite(A), "A must be >= a");
  require(alpha > -1.0 && std::isfinite(alpha), "alpha must be > -1");
  EllipticOperator op;
  op.kind_ = sign == PucciSign::plus ? OperatorKind::pucci_plus : OperatorKind::pucci_minus;
  op.a_ = a;
  op.A_ = A;
  op.alpha_ = alpha;
  return op;
}

EllipticOperator EllipticOperator::laplacian() { return pucci(PucciSign::minus, 1.0, 1.0, 0.0); }

EllipticOperator EllipticOperator::p_laplacian(double p) {
  require(p > 1.0 && std::isfinite(p), "p-Laplacian needs p > 1");
  EllipticOperator op;
  op.kind_ = OperatorKind::p_laplacian;
  op.p_ = p;
  op.alpha_ = p - 2.0;
  op.a_ = std::min(1.0, p - 1.0);
  op.A_ = std::max(1.0, p - 1.0);
  return op;
}

EllipticOperator EllipticOperator::anisotropic(double a, double A, double q, double c0,
                                               RadialProfile b1, RadialProfile b2,
                                               double validation_radius) {
  require(a > 0.0 && A >= a, "anisotropic needs 0 < a <= A");
  require(q > 1.0 && std::isfinite(q), "anisotropic needs q > 1");
  require(c0 > -1.0 && std::isfinite(c0), "anisotropic needs c0 > -1");
  require(validation_radius > 0.0, "validation radius must be > 0");
  for (int i = 0; i < kProfileSamples; ++i) {
    const double r = validation_radius * i / (kProfileSamples - 1);
    const double v1 = b1(r);
    const double v2 = b2(r);
    if (!(v1 >= a && v1 <= A)) {
      std::ostringstream os;
      os << "b1(" << r << ") = " << v1 << " outside [a, A] = [" << a << ", " << A << "]";
      require(false, os.str());
    }
    if (!(v2 * v2 <= a)) {
      std::ostringstream os;
      os << "b2(" << r << ")^2 = " << v2 * v2 << " exceeds a = " << a;
      require(false, os.str());
    }
  }
  EllipticOperator op;
  op.kind_ = OperatorKind::anisotropic;
  op.a_ = a;
  op.A_ = A;
  op.alpha_ = q - 2.0;
  op.p_ = q;
  op.c0_ = c0;
  op.b1_ = std::move(b1);
  op.b2_ = std::move(b2);
  op.profile_radius_ = validation_radius;
  return op;
}

EllipticOperator EllipticOperator::with_regularity(RegularityMeta meta) const {
  require(meta.theta > 0.5 && meta.theta <= 1.0, "theta must lie in (1/2, 1]");
  require(meta.nu > 0.5 && meta.nu <= 1.0, "nu must lie in (1/2, 1]");
  require(meta.c1 >= 0.0 && meta.c2 >= 0.0, "C1, C2 must be >= 0");
  EllipticOperator op = *this;
  op.regularity_ = meta;
  return op;
}

EllipticOperator EllipticOperator::with_gradient_floor(double delta) const {
  require(delta > 0.0 && std::isfinite(delta), "gradient floor must be > 0");
  EllipticOperator op = *this;
  op.delta_ = delta;
  return op;
}

std::pair<double, double> EllipticOperator::ellipticity_constants() const {
  switch (kind_) {
    case OperatorKind::pucci_plus:
    case OperatorKind::pucci_minus:
    case OperatorKind::p_laplacian:
      return {a_, A_};
    case OperatorKind::anisotropic:
      // radial coefficient b1 + c0 b2^2 with b2^2 <= a, tangential b1
      return {a_ * (1.0 + std::min(c0_, 0.0)), A_ + std::max(c0_, 0.0) * a_};
  }
  return {a_, A_};
}

RadialJet make_radial_jet(double r, double u1, double u2) {
  if (r > 0.0) return {r, u1, u2, u1 / r};
  return {0.0, u1, u2, u2};
}

std::vector<EigenvalueBlock> radial_hessian_eigs(double u1, double u2, double r, int dim) {
  if (!(r > 0.0))
    throw std::invalid_argument("radial_hessian_eigs: r must be > 0 (use the symmetric limit at 0)");
  if (dim < 1) throw std::invalid_argument("radial_hessian_eigs: dimension must be >= 1");
  std::vector<EigenvalueBlock> eigs{{u2, 1}};
  if (dim > 1) eigs.push_back({u1 / r, dim - 1});
  return eigs;
}

double pucci_extremal(std::span<const EigenvalueBlock> eigs, double a, double A, PucciSign sign) {
  double pos = 0.0;
  double neg = 0.0;
  for (const auto& e : eigs) {
    if (e.value > 0.0) pos += e.multiplicity * e.value;
    else neg -= e.multiplicity * e.value;
  }
  return sign == PucciSign::minus ? a * pos - A * neg : A * pos - a * neg;
}

SplitSlopes split_slopes(const EllipticOperator& op, double r) {
  switch (op.kind()) {
    case OperatorKind::pucci_plus:
      return {op.A(), op.a(), op.A(), op.a()};
    case OperatorKind::pucci_minus:
      return {op.a(), op.A(), op.a(), op.A()};
    case OperatorKind::p_laplacian:
      return {op.p() - 1.0, op.p() - 1.0, 1.0, 1.0};
    case OperatorKind::anisotropic: {
      const double b1 = op.b1()(r);
      const double b2 = op.b2()(r);
      const double radial = b1 + op.c0() * b2 * b2;
      return {radial, radial, b1, b1};
    }
  }
  return {};
}

double signed_power(double u, double alpha) {
  if (alpha == 0.0) return u;
  const double m = std::pow(std::abs(u), alpha + 1.0);
  return u < 0.0 ? -m : m;
}

FLinearization linearize_F(const EllipticOperator& op, int dim, const RadialJet& jet) {
  const double tangential_mult = dim - 1;
  const auto [phi, dphi] = gradient_factor(jet.u1, op.alpha(), op.gradient_floor());
  double body = 0.0;
  double d_u2 = 0.0;
  double d_t = 0.0;
  switch (op.kind()) {
    case OperatorKind::pucci_plus:
    case OperatorKind::pucci_minus: {
      const PucciSign s = sign_of(op.kind());
      body = pucci_scalar(jet.u2, op.a(), op.A(), s) +
             tangential_mult * pucci_scalar(jet.tangential, op.a(), op.A(), s);
      d_u2 = pucci_slope(jet.u2, op.a(), op.A(), s);
      d_t = tangential_mult * pucci_slope(jet.tangential, op.a(), op.A(), s);
      break;
    }
    case OperatorKind::p_laplacian:
      d_u2 = op.p() - 1.0;
      d_t = tangential_mult;
      body = d_u2 * jet.u2 + d_t * jet.tangential;
      break;
    case OperatorKind::anisotropic: {
      const double b1 = op.b1()(jet.r);
      const double b2 = op.b2()(jet.r);
      d_u2 = b1 + op.c0() * b2 * b2;
      d_t = b1 * tangential_mult;
      body = d_u2 * jet.u2 + d_t * jet.tangential;
      break;
    }
  }
  return {phi * body, dphi * body, phi * d_u2, phi * d_t};
}

double eval_F(const EllipticOperator& op, int dim, const RadialJet& jet) {
  if (op.kind() == OperatorKind::pucci_plus || op.kind() == OperatorKind::pucci_minus) {
    const double phi = gradient_factor(jet.u1, op.alpha(), op.gradient_floor()).value;
    const EigenvalueBlock eigs[2] = {{jet.u2, 1}, {jet.tangential, dim - 1}};
    return phi * pucci_extremal(std::span(eigs, dim > 1 ? 2 : 1), op.a(), op.A(),
                                sign_of(op.kind()));
  }
  return linearize_F(op, dim, jet).value;
}

double eval_radial_F(const EllipticOperator& op, int dim, double r, double u1, double u2) {
  if (!(r > 0.0)) throw std::invalid_argument("eval_radial_F: r must be > 0");
  return eval_F(op, dim, make_radial_jet(r, u1, u2));
}

double eval_G(const EllipticOperator& op, int dim, const RadialJet& jet, double u, double b,
              double c, double lambda) {
  double value = eval_F(op, dim, jet);
  if (b != 0.0) {
    value += b * jet.u1 * gradient_factor(jet.u1, op.alpha(), op.gradient_floor()).value;
  }
  return value + (c + lambda) * signed_power(u, op.alpha());
}

double eval_radial_G(const EllipticOperator& op, int dim, const CoefficientField& coeff,
                     double r, double u, double u1, double u2, double lambda) {
  if (!(r > 0.0)) throw std::invalid_argument("eval_radial_G: r must be > 0");
  return eval_G(op, dim, make_radial_jet(r, u1, u2), u, coeff.b(r), coeff.c(r), lambda);
}

namespace {

// Size of the terms entering F at a jet, used to make tolerances relative
// even when F itself cancels to ~0.
double term_scale(const EllipticOperator& op, int dim, const RadialJet& jet) {
  const double phi = gradient_factor(jet.u1, op.alpha(), op.gradient_floor()).value;
  const double hi = op.ellipticity_constants().second;
  return phi * hi * (std::abs(jet.u2) + (dim - 1) * std::abs(jet.tangential));
}

double sample_signed(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::bernoulli_distribution flip(0.5);
  const double m = mag(rng);
  return flip(rng) ? -m : m;
}

RadialJet sample_jet(const EllipticOperator& op, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> radius(1e-3, 1.0);
  std::uniform_real_distribution<double> second(-10.0, 10.0);
  RadialJet jet;
  jet.r = op.profile_radius() * radius(rng);
  jet.u1 = sample_signed(rng, 1e-3, 10.0);
  jet.u2 = second(rng);
  jet.tangential = second(rng);
  return jet;
}

}  // namespace

PropertyReport check_homogeneity(const EllipticOperator& op, int dim, int sample_count,
                                 std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("check_homogeneity: sample_count must be >= 1");
  PropertyReport report;
  report.property = "homogeneity";
  report.kind = std::string(to_string(op.kind()));
  report.samples = sample_count;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mu_dist(0.0, 10.0);
  constexpr double kTol = 1e-12;
  for (int s = 0; s < sample_count; ++s) {
    const RadialJet jet = sample_jet(op, rng);
    const double t = sample_signed(rng, 1e-3, 10.0);
    const double mu = mu_dist(rng);
    if (std::abs(t * jet.u1) < op.gradient_floor() || std::abs(jet.u1) < op.gradient_floor()) {
      ++report.skipped;
      continue;
    }
    RadialJet scaled = jet;
    scaled.u1 = t * jet.u1;
    scaled.u2 = mu * jet.u2;
    scaled.tangential = mu * jet.tangential;
    const double lhs = eval_F(op, dim, scaled);
    const double rhs = std::pow(std::abs(t), op.alpha()) * mu * eval_F(op, dim, jet);
    const double scale = std::max({std::abs(lhs), std::abs(rhs), term_scale(op, dim, scaled),
                                   std::numeric_limits<double>::min()});
    const double err = std::abs(lhs - rhs) / scale;
    ++report.checked;
    report.max_rel_error = std::max(report.max_rel_error, err);
    if (!(err <= kTol)) {
      std::ostringstream os;
      os << "t=" << t << " mu=" << mu << " rel.err=" << err;
      report.failures.push_back({jet, lhs, rhs, os.str()});
    }
  }
  return report;
}

PropertyReport check_ellipticity(const EllipticOperator& op, int dim, int sample_count,
                                 std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("check_ellipticity: sample_count must be >= 1");
  PropertyReport report;
  report.property = "ellipticity";
  report.kind = std::string(to_string(op.kind()));
  report.samples = sample_count;
  const auto [lo, hi] = op.ellipticity_constants();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> perturb(0.0, 10.0);
  std::bernoulli_distribution zero_radial(0.1);
  std::bernoulli_distribution zero_tangential(0.1);
  constexpr double kTol = 1e-10;
  for (int s = 0; s < sample_count; ++s) {
    const RadialJet base = sample_jet(op, rng);
    const double n2 = zero_radial(rng) ? 0.0 : perturb(rng);
    const double nt = zero_tangential(rng) ? 0.0 : perturb(rng);
    RadialJet moved = base;
    moved.u2 += n2;
    moved.tangential += nt;
    const double diff = eval_F(op, dim, moved) - eval_F(op, dim, base);
    const double phi = std::pow(regularized_gradient(base.u1, op.gradient_floor()), op.alpha());
    const double trace = n2 + (dim - 1) * nt;
    const double lower = lo * phi * trace;
    const double upper = hi * phi * trace;
    const double scale =
        std::max({term_scale(op, dim, moved), term_scale(op, dim, base), std::abs(upper),
                  std::numeric_limits<double>::min()});
    const double below = (lower - diff) / scale;
    const double above = (diff - upper) / scale;
    const double err = std::max({below, above, 0.0});
    ++report.checked;
    report.max_rel_error = std::max(report.max_rel_error, err);
    if (!(err <= kTol)) {
      std::ostringstream os;
      os << "n2=" << n2 << " nt=" << nt << " diff=" << diff << " bounds=[" << lower << ", "
         << upper << "]";
      report.failures.push_back({base, diff, below > above ? lower : upper, os.str()});
    }
  }
  return report;
}

double holder_quotient(const RadialProfile& f, std::span<const double> radii, double exponent) {
  if (!(exponent > 0.0 && exponent <= 1.0))
    throw std::invalid_argument("holder_quotient: exponent must lie in (0, 1]");
  std::vector<double> values(radii.size());
  std::transform(radii.begin(), radii.end(), values.begin(), [&](double r) { return f(r); });
  double q = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (std::size_t j = i + 1; j < radii.size(); ++j) {
      const double d = std::abs(radii[i] - radii[j]);
      if (d > 0.0) q = std::max(q, std::abs(values[i] - values[j]) / std::pow(d, exponent));
    }
  }
  return q;
}

}  // namespace radeig
