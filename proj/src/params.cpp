#include "lvstage/params.hpp"

namespace lvstage {

void ModelParams::validate() const {
  require(std::isfinite(d1) && d1 > 0.0 && std::isfinite(d2) && d2 > 0.0,
          ErrorCode::InvalidArgument, "diffusion rates d1, d2 must be positive");
  require(tau1 >= 0.0 && tau2 >= 0.0, ErrorCode::InvalidArgument,
          "delays tau1, tau2 must be nonnegative");
  require(gamma1 >= 0.0 && gamma2 >= 0.0, ErrorCode::InvalidArgument,
          "death rates gamma1, gamma2 must be nonnegative");
  require(std::isfinite(b) && b > 0.0 && std::isfinite(c) && c > 0.0,
          ErrorCode::InvalidArgument, "competition coefficients b, c must be positive");
}

SampledParams::SampledParams(const ModelParams& p, const Grid& g)
    : params(p),
      grid(g),
      m1(p.m1.sample(g, p.mplus, &warning)),
      m2(p.m2.sample(g, p.mplus, &warning)) {
  p.validate();
}

double coupled_residual(const SampledParams& sp, const Field& u, const Field& v) {
  const auto op1 = TridiagonalOperator::laplacian(sp.grid, sp.params.d1);
  const auto op2 = TridiagonalOperator::laplacian(sp.grid, sp.params.d2);
  const double delta1 = sp.params.delta1();
  const double delta2 = sp.params.delta2();
  Field ru = op1.apply(u);
  Field rv = op2.apply(v);
  double res = 0.0;
  for (int j = 0; j < sp.grid.size(); ++j) {
    ru[j] += u[j] * (delta1 * sp.m1[j] - u[j] - sp.params.c * v[j]);
    rv[j] += v[j] * (delta2 * sp.m2[j] - sp.params.b * u[j] - v[j]);
    res = std::max(res, std::max(std::fabs(ru[j]), std::fabs(rv[j])));
  }
  return res;
}

}  // namespace lvstage
