#ifndef LVSTAGE_GRID_HPP
#define LVSTAGE_GRID_HPP

#include <span>
#include <vector>

#include "lvstage/errors.hpp"

namespace lvstage {

/// Uniform node-centered mesh on [0, L] with nodes x_j = j*h, h = L/(n-1).
class Grid {
 public:
  Grid(double length, int nodes);

  double length() const noexcept { return length_; }
  int size() const noexcept { return nodes_; }
  double spacing() const noexcept { return spacing_; }
  double node(int j) const noexcept { return spacing_ * j; }

  /// Trapezoid quadrature weight of node j (h/2 at the ends, h inside).
  double weight(int j) const noexcept {
    return (j == 0 || j == nodes_ - 1) ? 0.5 * spacing_ : spacing_;
  }

  bool operator==(const Grid& other) const noexcept {
    return length_ == other.length_ && nodes_ == other.nodes_;
  }

 private:
  double length_;
  int nodes_;
  double spacing_;
};

/// Nodal values of a function on a Grid. Value semantics; cheap to copy for
/// the grid part, O(n) for the data.
class Field {
 public:
  explicit Field(const Grid& grid) : grid_(grid), values_(grid.size(), 0.0) {}
  Field(const Grid& grid, std::vector<double> values);

  const Grid& grid() const noexcept { return grid_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }

  double operator[](int j) const noexcept { return values_[j]; }
  double& operator[](int j) noexcept { return values_[j]; }

  std::span<const double> values() const noexcept { return values_; }
  std::vector<double>& raw() noexcept { return values_; }
  const std::vector<double>& raw() const noexcept { return values_; }

  double min() const noexcept;
  double max() const noexcept;
  double sup_norm() const noexcept;
  bool finite() const noexcept;

 private:
  Grid grid_;
  std::vector<double> values_;
};

Field constant_field(const Grid& grid, double value);

/// Trapezoid quadrature of f over [0, L].
double integrate(const Field& f);
double mean(const Field& f);

double sup_distance(const Field& a, const Field& b);

/// d*Laplacian with ghost-point Neumann closure plus an optional diagonal
/// reaction term. Row pattern for the pure Laplacian part:
/// (-2, 2; 1, -2, 1; ...; 2, -2) * d/h^2, so constants are in its kernel.
class TridiagonalOperator {
 public:
  /// Discrete d*Laplacian on the grid; requires d > 0.
  static TridiagonalOperator laplacian(const Grid& grid, double d);
  /// All-zero operator (used where the spec exercises pure shifts).
  static TridiagonalOperator zero(const Grid& grid);

  /// This operator plus diag(r).
  TridiagonalOperator with_added_diagonal(const Field& r) const;

  Field apply(const Field& u) const;

  const Grid& grid() const noexcept { return grid_; }
  int size() const noexcept { return static_cast<int>(diag_.size()); }
  double diffusion() const noexcept { return diffusion_; }

  double sub(int i) const noexcept { return sub_[i]; }      // valid for i >= 1
  double diag(int i) const noexcept { return diag_[i]; }
  double super(int i) const noexcept { return super_[i]; }  // valid for i <= n-2

 private:
  TridiagonalOperator(const Grid& grid, double diffusion, std::vector<double> sub,
                      std::vector<double> diag, std::vector<double> super);

  Grid grid_;
  double diffusion_;
  std::vector<double> sub_, diag_, super_;
};

/// Solves (sigma*I - op) u = rhs by the Thomas algorithm.
/// Fails with SingularSystem when a pivot drops below 1e-14 (absolute, and
/// relative to the matrix scale).
Field solve_shifted(const TridiagonalOperator& op, double sigma, const Field& rhs);

/// In-place variant reusing caller workspace; out may alias rhs.
void solve_shifted_into(const TridiagonalOperator& op, double sigma,
                        std::span<const double> rhs, std::span<double> out,
                        std::vector<double>& scratch);

}  // namespace lvstage

#endif
