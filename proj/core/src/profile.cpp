#include "radeig/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace radeig {

RadialProfile::RadialProfile()
    : fn_([](double) { return 0.0; }), description_("const:0"), constant_(true) {}

RadialProfile::RadialProfile(std::function<double(double)> fn, std::string description)
    : fn_(std::move(fn)), description_(std::move(description)) {
  if (!fn_) throw std::invalid_argument("profile: empty callable");
}

RadialProfile RadialProfile::constant(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("profile: constant must be finite");
  std::ostringstream os;
  os.precision(17);
  os << "const:" << value;
  RadialProfile p([value](double) { return value; }, os.str());
  p.constant_ = true;
  return p;
}

RadialProfile RadialProfile::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("profile: polynomial needs coefficients");
  std::ostringstream os;
  os.precision(17);
  os << "poly:";
  for (std::size_t i = 0; i < coeffs.size(); ++i) os << (i ? "," : "") << coeffs[i];
  const bool flat = std::all_of(coeffs.begin() + 1, coeffs.end(), [](double c) { return c == 0.0; });
  RadialProfile p(
      [coeffs](double r) {
        double acc = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * r + *it;
        return acc;
      },
      os.str());
  p.constant_ = flat;
  return p;
}

RadialProfile RadialProfile::tabulated(std::vector<double> radii, std::vector<double> values,
                                       std::string description) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw std::invalid_argument("profile: table needs at least two (r, value) samples");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("profile: table radii must be strictly increasing");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("profile: table values must be finite");
  }
  return RadialProfile(
      [radii = std::move(radii), values = std::move(values)](double r) {
        if (r <= radii.front()) return values.front();
        if (r >= radii.back()) return values.back();
        const auto hi = static_cast<std::size_t>(
            std::upper_bound(radii.begin(), radii.end(), r) - radii.begin());
        const std::size_t lo = hi - 1;
        const double t = (r - radii[lo]) / (radii[hi] - radii[lo]);
        return (1.0 - t) * values[lo] + t * values[hi];
      },
      std::move(description));
}

double RadialProfile::sup_norm(std::span<const double> radii) const {
  double s = 0.0;
  for (double r : radii) s = std::max(s, std::abs(fn_(r)));
  return s;
}

}  // namespace radeig
