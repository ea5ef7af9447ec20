#include "radeig/radial_domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace radeig {

RadialGrid::RadialGrid(double radius, int dim, int nodes)
    : radius_(radius), dim_(dim), nodes_(nodes), h_(0.0) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("grid: R must be > 0");
  if (dim < 1) throw std::invalid_argument("grid: N must be >= 1");
  if (nodes < 3) throw std::invalid_argument("grid: n must be ≥ 3");
  h_ = radius / (nodes - 1);
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(static_cast<std::size_t>(nodes_));
  for (int i = 0; i < nodes_; ++i) r[static_cast<std::size_t>(i)] = node(i);
  return r;
}

RadialGrid build_grid(double radius, int dim, int nodes) { return RadialGrid(radius, dim, nodes); }

GridFunction::GridFunction(RadialGrid grid, double fill)
    : grid_(grid), values_(static_cast<std::size_t>(grid.size()), fill) {}

GridFunction::GridFunction(RadialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(grid_.size()))
    throw std::invalid_argument("grid function: value count does not match the grid");
}

double GridFunction::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

double GridFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }

RadialDerivatives discrete_derivatives(const GridFunction& u) {
  const RadialGrid& grid = u.grid();
  const int n = grid.size();
  const double h = grid.spacing();
  const double inv_2h = 0.5 / h;
  const double inv_h2 = 1.0 / (h * h);
  GridFunction d1(grid);
  GridFunction d2(grid);
  d1[0] = 0.0;
  d2[0] = 2.0 * (u[1] - u[0]) * inv_h2;
  for (int i = 1; i < n - 1; ++i) {
    d1[i] = (u[i + 1] - u[i - 1]) * inv_2h;
    d2[i] = (u[i + 1] - 2.0 * u[i] + u[i - 1]) * inv_h2;
  }
  d1[n - 1] = 0.0;
  d2[n - 1] = 2.0 * (u[n - 2] - u[n - 1]) * inv_h2;
  return {std::move(d1), std::move(d2)};
}

double lipschitz_quotient(const GridFunction& u) {
  double q = 0.0;
  for (int i = 0; i + 1 < u.size(); ++i) q = std::max(q, std::abs(u[i + 1] - u[i]));
  return q / u.grid().spacing();
}

void write_csv(std::ostream& os, const GridFunction& u) {
  os << "r,u\n";
  char buf[64];
  for (int i = 0; i < u.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", u.grid().node(i), u[i]);
    os << buf;
  }
}

void write_csv(const std::string& path, const GridFunction& u) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out, u);
}

Samples read_csv_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table '" + path + "'");
  Samples s;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("table '" + path + "' is empty");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected two columns");
    try {
      std::size_t used = 0;
      const double r = std::stod(line.substr(0, comma), &used);
      const double v = std::stod(line.substr(comma + 1));
      s.radii.push_back(r);
      s.values.push_back(v);
    } catch (const std::logic_error&) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return s;
}

}  // namespace radeig
