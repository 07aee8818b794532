#include "lvstage/grid.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace lvstage {

Grid::Grid(double length, int nodes) : length_(length), nodes_(nodes) {
  require(std::isfinite(length) && length > 0.0, ErrorCode::InvalidArgument,
          "grid length must be positive and finite");
  require(nodes >= 3, ErrorCode::InvalidArgument, "grid needs at least 3 nodes");
  spacing_ = length_ / (nodes_ - 1);
}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  require(static_cast<int>(values_.size()) == grid_.size(), ErrorCode::InvalidArgument,
          "field length does not match grid node count");
}

double Field::min() const noexcept {
  return *std::min_element(values_.begin(), values_.end());
}

double Field::max() const noexcept {
  return *std::max_element(values_.begin(), values_.end());
}

double Field::sup_norm() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::fabs(v));
  return m;
}

bool Field::finite() const noexcept {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Field constant_field(const Grid& grid, double value) {
  return Field(grid, std::vector<double>(grid.size(), value));
}

double integrate(const Field& f) {
  const Grid& g = f.grid();
  double sum = 0.0;
  for (int j = 0; j < g.size(); ++j) sum += g.weight(j) * f[j];
  return sum;
}

double mean(const Field& f) { return integrate(f) / f.grid().length(); }

double sup_distance(const Field& a, const Field& b) {
  require(a.grid() == b.grid(), ErrorCode::InvalidArgument,
          "sup_distance: fields live on different grids");
  double m = 0.0;
  for (int j = 0; j < a.size(); ++j) m = std::max(m, std::fabs(a[j] - b[j]));
  return m;
}

TridiagonalOperator::TridiagonalOperator(const Grid& grid, double diffusion,
                                         std::vector<double> sub, std::vector<double> diag,
                                         std::vector<double> super)
    : grid_(grid),
      diffusion_(diffusion),
      sub_(std::move(sub)),
      diag_(std::move(diag)),
      super_(std::move(super)) {}

TridiagonalOperator TridiagonalOperator::laplacian(const Grid& grid, double d) {
  require(std::isfinite(d) && d > 0.0, ErrorCode::InvalidArgument,
          "diffusion coefficient must be positive");
  const int n = grid.size();
  const double s = d / (grid.spacing() * grid.spacing());
  std::vector<double> sub(n, 0.0), diag(n, 0.0), super(n, 0.0);
  // Ghost-point Neumann closure: u_{-1} = u_1 and u_n = u_{n-2}.
  diag[0] = -2.0 * s;
  super[0] = 2.0 * s;
  for (int i = 1; i < n - 1; ++i) {
    sub[i] = s;
    diag[i] = -2.0 * s;
    super[i] = s;
  }
  sub[n - 1] = 2.0 * s;
  diag[n - 1] = -2.0 * s;
  return TridiagonalOperator(grid, d, std::move(sub), std::move(diag), std::move(super));
}

TridiagonalOperator TridiagonalOperator::zero(const Grid& grid) {
  const int n = grid.size();
  return TridiagonalOperator(grid, 0.0, std::vector<double>(n, 0.0),
                             std::vector<double>(n, 0.0), std::vector<double>(n, 0.0));
}

TridiagonalOperator TridiagonalOperator::with_added_diagonal(const Field& r) const {
  require(r.grid() == grid_, ErrorCode::InvalidArgument,
          "diagonal term lives on a different grid");
  std::vector<double> diag = diag_;
  for (int i = 0; i < size(); ++i) diag[i] += r[i];
  return TridiagonalOperator(grid_, diffusion_, sub_, std::move(diag), super_);
}

Field TridiagonalOperator::apply(const Field& u) const {
  require(u.grid() == grid_, ErrorCode::InvalidArgument,
          "operand lives on a different grid");
  const int n = size();
  Field out(grid_);
  for (int i = 0; i < n; ++i) {
    double v = diag_[i] * u[i];
    if (i > 0) v += sub_[i] * u[i - 1];
    if (i < n - 1) v += super_[i] * u[i + 1];
    out[i] = v;
  }
  return out;
}

void solve_shifted_into(const TridiagonalOperator& op, double sigma,
                        std::span<const double> rhs, std::span<double> out,
                        std::vector<double>& scratch) {
  const int n = op.size();
  require(static_cast<int>(rhs.size()) == n && static_cast<int>(out.size()) == n,
          ErrorCode::InvalidArgument, "solve_shifted: size mismatch");

  // Matrix rows of sigma*I - op.
  scratch.resize(2 * n);
  double* c = scratch.data();       // modified superdiagonal
  double* y = scratch.data() + n;   // forward-substituted rhs

  double scale = std::fabs(sigma);
  for (int i = 0; i < n; ++i) {
    scale = std::max(scale, std::fabs(sigma - op.diag(i)));
    if (i > 0) scale = std::max(scale, std::fabs(op.sub(i)));
    if (i < n - 1) scale = std::max(scale, std::fabs(op.super(i)));
  }
  const double pivot_floor = 1e-14 * std::max(1.0, scale);

  double pivot = sigma - op.diag(0);
  require(std::fabs(pivot) >= pivot_floor, ErrorCode::SingularSystem,
          "solve_shifted: singular system (zero pivot in row 0)");
  c[0] = -op.super(0) / pivot;
  y[0] = rhs[0] / pivot;
  for (int i = 1; i < n; ++i) {
    const double a = -op.sub(i);
    pivot = (sigma - op.diag(i)) - a * c[i - 1];
    require(std::fabs(pivot) >= pivot_floor, ErrorCode::SingularSystem,
            "solve_shifted: singular system (zero pivot in row " + std::to_string(i) + ")");
    if (i < n - 1) c[i] = -op.super(i) / pivot;
    y[i] = (rhs[i] - a * y[i - 1]) / pivot;
  }
  out[n - 1] = y[n - 1];
  for (int i = n - 2; i >= 0; --i) out[i] = y[i] - c[i] * out[i + 1];
}

Field solve_shifted(const TridiagonalOperator& op, double sigma, const Field& rhs) {
  require(rhs.grid() == op.grid(), ErrorCode::InvalidArgument,
          "solve_shifted: rhs lives on a different grid");
  Field out(op.grid());
  std::vector<double> scratch;
  solve_shifted_into(op, sigma, rhs.values(), std::span<double>(out.raw()), scratch);
  return out;
}

}  // namespace lvstage
