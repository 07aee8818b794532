#ifndef LVSTAGE_DETAIL_COUPLED_SOLVER_HPP
#define LVSTAGE_DETAIL_COUPLED_SOLVER_HPP

#include <span>
#include <vector>

#include "lvstage/grid.hpp"

namespace lvstage::detail {

/// Two coupled scalar Neumann operators with diagonal cross coupling:
///   A [u; v] = [T1 u + p1.*u + q1.*v ; T2 v + p2.*v + q2.*u]
/// where Ti is the tridiagonal d_i*Laplacian. Interleaving (u0, v0, u1, v1,
/// ...) makes sigma*I - A pentadiagonal, solved by banded LU without
/// pivoting (callers keep the shifted matrix diagonally dominant).
class CoupledOperator {
 public:
  CoupledOperator(const TridiagonalOperator& op1, const TridiagonalOperator& op2,
                  const Field& p1, const Field& p2, const Field& q1, const Field& q2);

  int nodes() const noexcept { return n_; }

  void apply(std::span<const double> u, std::span<const double> v,
             std::span<double> out_u, std::span<double> out_v) const;

 private:
  friend class CoupledBandedLU;
  int n_;
  const TridiagonalOperator* op1_;
  const TridiagonalOperator* op2_;
  const Field* p1_;
  const Field* p2_;
  const Field* q1_;
  const Field* q2_;
};

/// LU factorization of (sigma*I - A) for a CoupledOperator A.
class CoupledBandedLU {
 public:
  CoupledBandedLU(const CoupledOperator& a, double sigma);

  void solve(std::span<const double> rhs_u, std::span<const double> rhs_v,
             std::span<double> out_u, std::span<double> out_v) const;

 private:
  int dim_;
  // Bands of the factored matrix, offsets -2..+2; lower bands hold L
  // multipliers, diagonal and upper bands hold U.
  std::vector<double> band_[5];
  mutable std::vector<double> work_;
};

}  // namespace lvstage::detail

#endif
