#include "lvstage/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lvstage {

Field KernelMatrix::apply(const Field& f) const {
  require(f.grid() == grid_, ErrorCode::InvalidArgument,
          "kernel apply: field lives on a different grid");
  if (delta_) return f;
  Field out(grid_);
  for (int i = 0; i < n_; ++i) {
    const double* row = entries_.data() + static_cast<size_t>(i) * n_;
    double sum = 0.0;
    for (int j = 0; j < n_; ++j) sum += grid_.weight(j) * row[j] * f[j];
    out[i] = sum;
  }
  return out;
}

double KernelMatrix::row_quadrature_sum(int i) const {
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) sum += grid_.weight(j) * entry(i, j);
  return sum;
}

double KernelMatrix::min_entry() const {
  return *std::min_element(entries_.begin(), entries_.end());
}

KernelMatrix heat_kernel(const Grid& grid, double d_tilde, double t, int terms,
                         bool delta_mode) {
  require(std::isfinite(d_tilde) && d_tilde >= 0.0, ErrorCode::InvalidArgument,
          "heat_kernel: d_tilde must be nonnegative");
  require(std::isfinite(t) && t > 0.0, ErrorCode::InvalidArgument,
          "heat_kernel: t must be positive");
  require(terms >= 1, ErrorCode::InvalidArgument, "heat_kernel: need at least one term");

  const int n = grid.size();
  KernelMatrix k;
  k.grid_ = grid;
  k.n_ = n;
  k.terms_requested_ = terms;

  if (d_tilde * t == 0.0) {
    require(delta_mode, ErrorCode::InvalidArgument,
            "heat_kernel: d_tilde*t = 0 is a Dirac delta; finite series cannot "
            "represent it (set delta_mode)");
    k.delta_ = true;
    k.entries_.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
      k.entries_[static_cast<size_t>(i) * n + i] = 1.0 / grid.weight(i);
    return k;
  }

  const double L = grid.length();
  const double pi = std::numbers::pi;
  const double rate = pi * pi * d_tilde * t / (L * L);

  // Modes above n-1 are unresolvable on the grid; in particular mode 2(n-1)
  // is indistinguishable from a constant at the nodes and would break the
  // unit row sums.
  const int m_max = std::min(terms, n - 1);
  k.terms_used_ = m_max;

  const double q = std::exp(-rate);
  k.tail_bound_ = std::exp(-rate * m_max * m_max) / (1.0 - q);

  // Drop modes damped below machine noise.
  std::vector<double> damp(m_max + 1, 0.0);
  int m_cut = 0;
  for (int m = 1; m <= m_max; ++m) {
    damp[m] = std::exp(-rate * m * m);
    if (damp[m] < 1e-300) break;
    m_cut = m;
  }

  // cos(m pi x_j / L) for m = 1..m_cut.
  std::vector<double> cos_table(static_cast<size_t>(std::max(m_cut, 1)) * n);
  for (int m = 1; m <= m_cut; ++m)
    for (int j = 0; j < n; ++j)
      cos_table[static_cast<size_t>(m - 1) * n + j] = std::cos(m * pi * grid.node(j) / L);

  k.entries_.assign(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = 1.0 / L;
      for (int m = 1; m <= m_cut; ++m) {
        const double* row = cos_table.data() + static_cast<size_t>(m - 1) * n;
        sum += (2.0 / L) * damp[m] * row[i] * row[j];
      }
      k.entries_[static_cast<size_t>(i) * n + j] = sum;
      k.entries_[static_cast<size_t>(j) * n + i] = sum;
    }
  }
  return k;
}

}  // namespace lvstage
