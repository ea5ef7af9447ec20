#include "radeig/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "radeig/operators.hpp"

namespace radeig {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("certify: ") + what);
}

void validate(int dim, double a, double A, double alpha, double R, double rho, double k,
              double beta1, double beta2) {
  require(dim >= 1, "N must be >= 1");
  require(a > 0.0 && A >= a, "need 0 < a <= A");
  require(alpha >= 0.0, "alpha must be >= 0");
  require(R > 0.0, "R must be > 0");
  require(rho > 0.0 && rho < R, "need 0 < rho < R");
  require(k > 0.0, "k must be > 0");
  require(beta1 > 0.0, "beta1 must be > 0");
  require(beta2 > 0.0, "beta2 must be > 0");
}

// E^{alpha+1}(R-rho-eps)^alpha / (R-eps) * {N[(A-a)(R-eps) + A(R-eps) - a rho] + a(R+rho-eps)}
double middle_operator_bound(const SupersolutionParams& p) {
  const double re = p.R - p.eps;
  const double w = p.R - p.rho - p.eps;
  const double brace =
      p.dim * ((p.A - p.a) * re + p.A * re - p.a * p.rho) + p.a * (p.R + p.rho - p.eps);
  return std::pow(p.E, p.alpha + 1.0) * std::pow(w, p.alpha) / re * brace;
}

double inner_operator_bound(const SupersolutionParams& p) {
  const double q = p.alpha + 1.0;
  return std::pow(p.k, q) * std::exp(-q * p.k * p.rho) * p.a * (p.k + (p.dim - 1) / p.rho);
}

double middle_minimum(const SupersolutionParams& p) {
  const double w = p.R - p.rho - p.eps;
  return p.D - 0.25 * p.E * w * w;
}

double inner_maximum(const SupersolutionParams& p) { return p.D + 1.0 - std::exp(-p.k * p.rho); }

std::vector<double> dense(double lo, double hi, int n) {
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  return r;
}

}  // namespace

double limiting_D(int dim, double a, double A, double alpha, double R, double rho, double k,
                  double beta1) {
  validate(dim, a, A, alpha, R, rho, k, beta1, 1.0);
  const double num = 2.0 * dim * A * R - (dim - 1) * a * (R + rho);
  return k * ((R - rho) / 4.0 + std::pow(num / (beta1 * R * (R - rho)), 1.0 / (alpha + 1.0)));
}

double beta2_upper_bound(int dim, double a, double A, double alpha, double R, double rho,
                         double k, double beta1) {
  SupersolutionParams p;
  p.dim = dim;
  p.a = a;
  p.A = A;
  p.alpha = alpha;
  p.rho = rho;
  p.k = k;
  const double d = limiting_D(dim, a, A, alpha, R, rho, k, beta1);
  return inner_operator_bound(p) / std::pow(d + 1.0 - std::exp(-k * rho), alpha + 1.0);
}

double beta2_exact_bound(const SupersolutionParams& p) {
  return inner_operator_bound(p) / std::pow(inner_maximum(p), p.alpha + 1.0);
}

SupersolutionParams params_for_shells(int dim, double a, double A, double alpha, double R,
                                      double rho, double k, double beta1, double beta2,
                                      double eps, double eps_prime) {
  validate(dim, a, A, alpha, R, rho, k, beta1, beta2);
  require(eps > 0.0 && eps < eps_prime && eps_prime < R - rho, "need 0 < eps < eps' < R - rho");
  SupersolutionParams p{dim, a, A, alpha, R, rho, eps, eps_prime, k, beta1, beta2};
  const double q = alpha + 1.0;
  const double w = R - rho - eps;
  const double re = R - eps;
  p.E = k / (R - rho - eps_prime);
  const double brace = dim * ((A - a) * re + A * re - a * rho) + a * (R + rho - eps);
  p.C = std::pow(w, alpha / q) / (std::pow(beta1, 1.0 / q) * std::pow(re, 1.0 / q)) *
        std::pow(brace, 1.0 / q);
  p.D = 0.25 * p.E * w * w + p.E * p.C + eps;
  return p;
}

SupersolutionParams build_params(int dim, double a, double A, double alpha, double R,
                                 double rho, double k, double beta1, double beta2) {
  validate(dim, a, A, alpha, R, rho, k, beta1, beta2);
  const double ub = beta2_upper_bound(dim, a, A, alpha, R, rho, k, beta1);
  if (!(beta2 < ub)) {
    std::ostringstream os;
    os.precision(10);
    os << "certify: beta2 = " << beta2 << " is not below the admissible bound " << ub;
    throw InfeasibleParams(os.str());
  }
  double eps_prime = 0.25 * (R - rho);
  for (int s = 0; s < 20; ++s, eps_prime *= 0.5) {
    const SupersolutionParams p =
        params_for_shells(dim, a, A, alpha, R, rho, k, beta1, beta2, 0.5 * eps_prime, eps_prime);
    const bool corner = p.E * (R - rho - p.eps) > k;
    if (corner && middle_minimum(p) > 0.0 && beta2 < beta2_exact_bound(p)) return p;
  }
  std::ostringstream os;
  os << "certify: no shell width eps' >= " << eps_prime << " satisfies the supersolution "
     << "conditions for beta2 = " << beta2;
  throw InfeasibleParams(os.str());
}

PiecewiseRadialFn::PiecewiseRadialFn(SupersolutionParams params, double offset)
    : params_(params), offset_(offset) {}

PiecewiseRadialFn::Region PiecewiseRadialFn::region(double r) const {
  if (r <= params_.rho) return Region::inner;
  if (r <= params_.R - params_.eps) return Region::middle;
  return Region::outer;
}

PiecewiseRadialFn::Value PiecewiseRadialFn::eval(double r) const {
  const SupersolutionParams& p = params_;
  Value out;
  switch (region(r)) {
    case Region::inner: {
      const double e = std::exp(p.k * (r - p.rho));
      out = {p.D + 1.0 - e, -p.k * e, -p.k * p.k * e};
      break;
    }
    case Region::middle: {
      const double s = p.R + p.rho - p.eps;
      out = {p.E * r * r - p.E * s * r + p.D + p.E * p.rho * (p.R - p.eps),
             p.E * (2.0 * r - s), 2.0 * p.E};
      break;
    }
    case Region::outer:
      out = {p.D, 0.0, 0.0};
      break;
  }
  out.v += offset_;
  return out;
}

std::array<double, 3> PiecewiseRadialFn::breakpoints() const {
  return {0.0, params_.rho, params_.R - params_.eps};
}

PiecewiseRadialFn build_supersolution(const SupersolutionParams& params) {
  return PiecewiseRadialFn(params);
}

RadialProfile default_c_band(const SupersolutionParams& params) {
  const double rho = params.rho;
  const double edge = params.R - params.eps;
  const double w = 0.25 * std::min(params.eps, params.rho);
  const double b1 = params.beta1;
  const double b2 = params.beta2;
  auto fn = [=](double r) {
    if (r < rho - w) return 0.5 * b2;
    if (r < rho) return 0.5 * b2 + (r - (rho - w)) / w * (-b1 - 0.5 * b2);
    if (r <= edge) return -b1;
    if (r < edge + w) return -b1 + (r - edge) / w * (0.5 * b1);
    return -0.5 * b1;
  };
  std::ostringstream os;
  os << "band(beta1=" << b1 << ", beta2=" << b2 << ", rho=" << rho << ", edge=" << edge << ")";
  return RadialProfile(fn, os.str());
}

double Certificate::min_margin() const { return std::min({m1, m2, m3, grid_margin}); }

double Certificate::lambda_lower_bound() const {
  if (!accept) return 0.0;
  return std::min({m1, m2, m3}) / std::pow(inner_maximum(params), params.alpha + 1.0);
}

Certificate rejected_certificate(const SupersolutionParams& params, std::string reason) {
  Certificate cert;
  cert.params = params;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  cert.m1 = cert.m2 = cert.m3 = cert.grid_margin = cert.integral_c = cert.min_v = nan;
  cert.reasons.push_back(std::move(reason));
  return cert;
}

Certificate verify(const SupersolutionParams& params, const PiecewiseRadialFn& v,
                   const RadialProfile& c, const RadialGrid& grid) {
  const SupersolutionParams& p = params;
  require(grid.dim() == p.dim, "grid dimension differs from N");
  require(std::abs(grid.radius() - p.R) <= 1e-12 * p.R, "grid radius differs from R");
  const double edge = p.R - p.eps;

  int counts[3] = {0, 0, 0};
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    if (r < p.rho) ++counts[0];
    else if (r > p.rho && r < edge) ++counts[1];
    else if (r > edge) ++counts[2];
  }
  if (std::min({counts[0], counts[1], counts[2]}) < 20) {
    std::ostringstream os;
    os << "certify: grid does not resolve the regions (inner " << counts[0] << ", middle "
       << counts[1] << ", outer " << counts[2] << " nodes; at least 20 each)";
    throw std::invalid_argument(os.str());
  }

  Certificate cert;
  cert.params = p;
  const double q = p.alpha + 1.0;

  double c_outer = -std::numeric_limits<double>::infinity();
  for (double r : dense(edge, p.R, 2001)) c_outer = std::max(c_outer, c(r));
  for (int i = 0; i < grid.size(); ++i)
    if (grid.node(i) >= edge) c_outer = std::max(c_outer, c(grid.node(i)));
  cert.m1 = -c_outer * std::pow(p.D, q);
  cert.m2 = p.beta1 * std::pow(middle_minimum(p), q) - middle_operator_bound(p);
  cert.m3 = inner_operator_bound(p) - p.beta2 * std::pow(inner_maximum(p), q);

  std::vector<double> radii = dense(0.0, p.R, 20001);
  for (int i = 0; i < grid.size(); ++i) radii.push_back(grid.node(i));

  cert.band_ok = true;
  cert.min_v = std::numeric_limits<double>::infinity();
  for (double r : radii) {
    const double cr = c(r);
    const bool ok = r <= p.rho ? cr <= p.beta2 : (r <= edge ? cr <= -p.beta1 : cr < 0.0);
    if (!ok) cert.band_ok = false;
    cert.min_v = std::min(cert.min_v, v(r));
  }
  cert.positive = cert.min_v > 0.0;

  const EllipticOperator op = EllipticOperator::pucci(PucciSign::plus, p.a, p.A, p.alpha);
  const double h = grid.spacing();
  const auto bps = v.breakpoints();
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    bool near = false;
    for (double b : bps) near = near || std::abs(r - b) <= h * (1.0 + 1e-9);
    if (near) continue;
    const PiecewiseRadialFn::Value val = v.eval(r);
    const double lhs =
        eval_F(op, p.dim, make_radial_jet(r, val.d1, val.d2)) + c(r) * signed_power(val.v, p.alpha);
    worst = std::max(worst, lhs);
  }
  cert.grid_margin = -worst;
  cert.integral_c = integral_of_c(c, grid);

  if (!(cert.m1 > 0.0)) cert.reasons.push_back("outer-shell margin m1 is not positive");
  if (!(cert.m2 > 0.0)) cert.reasons.push_back("middle-region margin m2 is not positive");
  if (!(cert.m3 > 0.0)) cert.reasons.push_back("inner-region margin m3 is not positive");
  if (!(cert.grid_margin > 0.0))
    cert.reasons.push_back("grid sweep finds a node where v fails the supersolution inequality");
  if (!cert.positive) cert.reasons.push_back("v is not positive");
  if (!cert.band_ok) cert.reasons.push_back("c leaves the admissible band");
  if (!(cert.integral_c < 0.0)) cert.reasons.push_back("integral of c over the ball is not negative");
  cert.accept = cert.reasons.empty();
  return cert;
}

double barrier_exponent(double a, double A, int dim, double rho, double b_sup, double c_sup,
                        double alpha) {
  require(a > 0.0 && A >= a, "need 0 < a <= A");
  require(dim >= 1, "N must be >= 1");
  require(rho > 0.0, "rho must be > 0");
  require(alpha > -1.0, "alpha must be > -1");
  const double B = A * (dim - 1) / rho + std::abs(b_sup);
  const double c = std::abs(c_sup);
  const double target = 1e-8;
  auto f = [&](double k) {
    return a * std::pow(k, alpha + 2.0) - B * std::pow(k, alpha + 1.0) - c;
  };
  double lo = B / a;
  double hi = std::max(2.0 * lo, 1.0);
  while (f(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) >= target ? hi : lo) = mid;
  }
  return hi;
}

double hopf_barrier_margin(double a, double A, int dim, double rho, double R, double b_sup,
                           double c_sup, double alpha, double k, int samples) {
  require(rho > 0.0 && rho < R, "need 0 < rho < R");
  require(samples >= 1, "samples must be >= 1");
  const EllipticOperator op = EllipticOperator::pucci(PucciSign::minus, a, A, alpha);
  double worst = std::numeric_limits<double>::infinity();
  for (int j = 0; j < samples; ++j) {
    const double r = rho + (R - rho) * (j + 0.5) / samples;
    const double e = std::exp(-k * r);
    const double phi = e - std::exp(-k * R);
    const double d1 = -k * e;
    const double val = eval_F(op, dim, make_radial_jet(r, d1, k * k * e)) -
                       std::abs(b_sup) * std::pow(std::abs(d1), alpha + 1.0) -
                       std::abs(c_sup) * std::pow(phi, alpha + 1.0);
    worst = std::min(worst, val);
  }
  return worst;
}

double unit_ball_volume(int dim) {
  require(dim >= 1, "N must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim + 1.0);
}

double integral_of_c(const RadialProfile& c, const RadialGrid& grid) {
  const int N = grid.dim();
  const double area = N * unit_ball_volume(N);
  double sum = 0.0;
  double prev = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double r = grid.node(i);
    const double f = c(r) * area * std::pow(r, N - 1);
    if (i > 0) sum += 0.5 * (f + prev) * (r - grid.node(i - 1));
    prev = f;
  }
  return sum;
}

}  // namespace radeig
