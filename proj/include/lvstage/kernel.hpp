#ifndef LVSTAGE_KERNEL_HPP
#define LVSTAGE_KERNEL_HPP

#include <vector>

#include "lvstage/grid.hpp"

namespace lvstage {

/// Neumann heat kernel G(x, y, d, t) on (0, L) sampled at grid nodes,
/// from the cosine series
///   G = 1/L + (2/L) * sum_{m>=1} exp(-m^2 pi^2 d t / L^2) cos(m pi x/L) cos(m pi y/L),
/// truncated at min(terms, n-1) so every retained mode is resolvable on the
/// grid (higher modes alias onto lower ones and corrupt quadrature sums).
/// Integrals against the kernel use trapezoid weights.
class KernelMatrix {
 public:
  const Grid& grid() const noexcept { return grid_; }
  double entry(int i, int j) const noexcept { return entries_[static_cast<size_t>(i) * n_ + j]; }
  bool delta_mode() const noexcept { return delta_; }
  int terms_used() const noexcept { return terms_used_; }
  int terms_requested() const noexcept { return terms_requested_; }

  /// Bound on the neglected analytic tail sum_{m>terms_used} q^{m^2},
  /// q = exp(-pi^2 d t / L^2). Zero in delta mode.
  double tail_bound() const noexcept { return tail_bound_; }

  /// Quadrature application: out_i = sum_j w_j G_ij f_j. In delta mode this
  /// is an exact copy.
  Field apply(const Field& f) const;

  double row_quadrature_sum(int i) const;
  double min_entry() const;

 private:
  friend KernelMatrix heat_kernel(const Grid&, double, double, int, bool);

  Grid grid_{1.0, 3};
  int n_ = 0;
  bool delta_ = false;
  int terms_used_ = 0;
  int terms_requested_ = 0;
  double tail_bound_ = 0.0;
  std::vector<double> entries_;
};

/// Builds the sampled kernel for diffusion rate d_tilde over time t.
/// d_tilde * t == 0 collapses the kernel to a Dirac delta; that case is
/// rejected unless delta_mode is set, in which case the quadrature-normalized
/// identity (entry_ij = delta_ij / w_j) is returned.
KernelMatrix heat_kernel(const Grid& grid, double d_tilde, double t, int terms,
                         bool delta_mode = false);

}  // namespace lvstage

#endif
