#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace radeig {

/// Uniform grid r_i = i h, i = 0..n-1, on the radial segment [0, R] of the
/// ball B(0, R) in R^N.
class RadialGrid {
 public:
  RadialGrid(double radius, int dim, int nodes);

  double radius() const { return radius_; }
  int dim() const { return dim_; }
  int size() const { return nodes_; }
  double spacing() const { return h_; }

  /// r_i; the last node is exactly R.
  double node(int i) const { return i == nodes_ - 1 ? radius_ : i * h_; }
  /// Distance to the boundary sphere, R - r_i.
  double distance_to_boundary(int i) const { return radius_ - node(i); }
  std::vector<double> nodes() const;

  /// Grid with 2n - 1 nodes sharing every node of this one.
  RadialGrid refined() const { return RadialGrid(radius_, dim_, 2 * nodes_ - 1); }

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double radius_;
  int dim_;
  int nodes_;
  double h_;
};

RadialGrid build_grid(double radius, int dim, int nodes);

/// Node values of a radial function.
class GridFunction {
 public:
  /// Zero function on the smallest grid (R = 1, N = 1, n = 3).
  GridFunction() : GridFunction(RadialGrid(1.0, 1, 3)) {}
  explicit GridFunction(RadialGrid grid, double fill = 0.0);
  GridFunction(RadialGrid grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const RadialGrid& grid, F&& f) {
    std::vector<double> v(static_cast<std::size_t>(grid.size()));
    for (int i = 0; i < grid.size(); ++i) v[static_cast<std::size_t>(i)] = f(grid.node(i));
    return GridFunction(grid, std::move(v));
  }

  const RadialGrid& grid() const { return grid_; }
  int size() const { return grid_.size(); }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  double sup_norm() const;
  double min() const;
  double max() const;

 private:
  RadialGrid grid_;
  std::vector<double> values_;
};

/// First and second radial differences with the boundary treatment folded in.
struct RadialDerivatives {
  GridFunction first;
  GridFunction second;
};

/// Central differences in the interior. At r = R the ghost value
/// u_n := u_{n-2} enforces u'(R) = 0; at r = 0 the ghost u_{-1} := u_1
/// encodes radial symmetry. Both boundary nodes therefore get u1 = 0 and
/// u2 = 2 (u_neighbour - u_i) / h^2.
RadialDerivatives discrete_derivatives(const GridFunction& u);

/// max_i |u_{i+1} - u_i| / h, the discrete Lipschitz constant.
double lipschitz_quotient(const GridFunction& u);

/// CSV with header `r,u` and 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& u);
void write_csv(const std::string& path, const GridFunction& u);

/// Reads a two-column CSV with a header row. Returns (radii, values).
struct Samples {
  std::vector<double> radii;
  std::vector<double> values;
};
Samples read_csv_samples(const std::string& path);

}  // namespace radeig
