#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace radeig {

/// A scalar function of the radius r = |x|.
///
/// Either a closed-form callable or a table of samples read with linear
/// interpolation (constant extrapolation past the end points). The
/// `description` travels into serialized reports so runs can be audited.
class RadialProfile {
 public:
  RadialProfile();  // identically zero
  RadialProfile(std::function<double(double)> fn, std::string description);

  static RadialProfile constant(double value);
  /// c_0 + c_1 r + c_2 r^2 + ...
  static RadialProfile polynomial(std::vector<double> coeffs);
  static RadialProfile tabulated(std::vector<double> radii,
                                 std::vector<double> values,
                                 std::string description = "table");

  double operator()(double r) const { return fn_(r); }
  const std::string& description() const { return description_; }

  /// Constant profiles are detected so callers can skip work; only
  /// profiles built through `constant()` report true.
  bool is_constant() const { return constant_; }

  /// sup |f| over the given radii.
  double sup_norm(std::span<const double> radii) const;

 private:
  std::function<double(double)> fn_;
  std::string description_;
  bool constant_ = false;
};

/// b, c and g of the radial problem; b(x) = b_r(|x|) x/|x|.
struct CoefficientField {
  RadialProfile b;
  RadialProfile c;
  RadialProfile g;

  static CoefficientField zero_order(RadialProfile c) {
    return {RadialProfile{}, std::move(c), RadialProfile{}};
  }
};

}  // namespace radeig
