#include "lvstage/detail/coupled_solver.hpp"

#include <cmath>

namespace lvstage::detail {

CoupledOperator::CoupledOperator(const TridiagonalOperator& op1,
                                 const TridiagonalOperator& op2, const Field& p1,
                                 const Field& p2, const Field& q1, const Field& q2)
    : n_(op1.size()), op1_(&op1), op2_(&op2), p1_(&p1), p2_(&p2), q1_(&q1), q2_(&q2) {
  require(op2.size() == n_ && p1.size() == n_ && p2.size() == n_ && q1.size() == n_ &&
              q2.size() == n_,
          ErrorCode::InvalidArgument, "coupled operator: size mismatch");
}

void CoupledOperator::apply(std::span<const double> u, std::span<const double> v,
                            std::span<double> out_u, std::span<double> out_v) const {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    double au = op1_->diag(i) * u[i];
    double av = op2_->diag(i) * v[i];
    if (i > 0) {
      au += op1_->sub(i) * u[i - 1];
      av += op2_->sub(i) * v[i - 1];
    }
    if (i < n - 1) {
      au += op1_->super(i) * u[i + 1];
      av += op2_->super(i) * v[i + 1];
    }
    out_u[i] = au + (*p1_)[i] * u[i] + (*q1_)[i] * v[i];
    out_v[i] = av + (*p2_)[i] * v[i] + (*q2_)[i] * u[i];
  }
}

CoupledBandedLU::CoupledBandedLU(const CoupledOperator& a, double sigma) {
  const int n = a.nodes();
  dim_ = 2 * n;
  for (auto& b : band_) b.assign(dim_, 0.0);
  // band_[k] holds offset k-2 (column - row).
  auto& lo2 = band_[0];
  auto& lo1 = band_[1];
  auto& dg = band_[2];
  auto& up1 = band_[3];
  auto& up2 = band_[4];

  double scale = std::fabs(sigma);
  for (int i = 0; i < n; ++i) {
    const int r = 2 * i;      // u row
    const int s = 2 * i + 1;  // v row
    dg[r] = sigma - a.op1_->diag(i) - (*a.p1_)[i];
    dg[s] = sigma - a.op2_->diag(i) - (*a.p2_)[i];
    up1[r] = -(*a.q1_)[i];  // u row, v_i column
    lo1[s] = -(*a.q2_)[i];  // v row, u_i column
    if (i < n - 1) {
      up2[r] = -a.op1_->super(i);
      up2[s] = -a.op2_->super(i);
    }
    if (i > 0) {
      lo2[r] = -a.op1_->sub(i);
      lo2[s] = -a.op2_->sub(i);
    }
    scale = std::max({scale, std::fabs(dg[r]), std::fabs(dg[s]), std::fabs(up1[r]),
                      std::fabs(lo1[s]), std::fabs(up2[r]), std::fabs(lo2[r])});
  }
  const double pivot_floor = 1e-14 * std::max(1.0, scale);

  // In-place banded LU, no pivoting.
  for (int i = 0; i < dim_; ++i) {
    const double pivot = dg[i];
    require(std::fabs(pivot) >= pivot_floor, ErrorCode::SingularSystem,
            "coupled solve: singular system (zero pivot in row " + std::to_string(i) + ")");
    for (int r = 1; r <= 2 && i + r < dim_; ++r) {
      double& entry = band_[2 - r][i + r];  // element (i+r, i)
      if (entry == 0.0) continue;
      const double mult = entry / pivot;
      entry = mult;
      for (int c = 1; c <= 2 && i + c < dim_; ++c) {
        const double uc = band_[2 + c][i];  // element (i, i+c)
        if (uc != 0.0) band_[2 + c - r][i + r] -= mult * uc;
      }
    }
  }
}

void CoupledBandedLU::solve(std::span<const double> rhs_u, std::span<const double> rhs_v,
                            std::span<double> out_u, std::span<double> out_v) const {
  const int n = dim_ / 2;
  work_.resize(dim_);
  double* y = work_.data();
  for (int i = 0; i < n; ++i) {
    y[2 * i] = rhs_u[i];
    y[2 * i + 1] = rhs_v[i];
  }
  // Forward substitution with unit-lower L.
  for (int i = 1; i < dim_; ++i) {
    double acc = y[i];
    acc -= band_[1][i] * y[i - 1];
    if (i >= 2) acc -= band_[0][i] * y[i - 2];
    y[i] = acc;
  }
  // Back substitution with U.
  for (int i = dim_ - 1; i >= 0; --i) {
    double acc = y[i];
    if (i + 1 < dim_) acc -= band_[3][i] * y[i + 1];
    if (i + 2 < dim_) acc -= band_[4][i] * y[i + 2];
    y[i] = acc / band_[2][i];
  }
  for (int i = 0; i < n; ++i) {
    out_u[i] = y[2 * i];
    out_v[i] = y[2 * i + 1];
  }
}

}  // namespace lvstage::detail
