#include "lvstage/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "lvstage/detail/coupled_solver.hpp"
#include "lvstage/tolerances.hpp"

namespace lvstage {

namespace {

constexpr int kMaxPowerIterations = 20000;

double clamped_exp(double x) { return std::exp(std::min(x, 700.0)); }

// Bisection for a strictly decreasing g with g(root) = 0. The initial
// bracket [-span, span] follows the analytic bound; it is widened (doubling)
// defensively before giving up, and the sign assertion g(lo) > 0 > g(hi)
// is enforced prior to iterating.
double decreasing_root(const std::function<double(double)>& g, double span,
                       const char* what) {
  double lo = -span, hi = span;
  double glo = g(lo), ghi = g(hi);
  for (int widen = 0; (glo <= 0.0 || ghi >= 0.0) && widen < 60; ++widen) {
    if (glo <= 0.0) {
      lo *= 2.0;
      glo = g(lo);
    }
    if (ghi >= 0.0) {
      hi *= 2.0;
      ghi = g(hi);
    }
  }
  require(glo > 0.0 && ghi < 0.0, ErrorCode::BracketFailure,
          std::string(what) + ": no sign change on the bisection bracket");

  double gmid = glo;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    gmid = g(mid);
    if (std::fabs(gmid) <= tol::root) return mid;
    if (gmid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-15 * std::max(1.0, std::fabs(mid))) return mid;
  }
  fail(ErrorCode::NonConvergence,
       std::string(what) + ": bisection failed to resolve the root");
}

}  // namespace

EigenResult mu1(double d, const Field& w) {
  require(w.finite(), ErrorCode::InvalidArgument, "mu1: potential is not finite");
  const Grid& grid = w.grid();
  const int n = grid.size();
  const auto op = TridiagonalOperator::laplacian(grid, d).with_added_diagonal(w);
  const double sigma = w.max() + 1.0;

  Field v = constant_field(grid, 1.0);
  Field av(grid);
  std::vector<double> scratch;
  double value = 0.0;
  int stationary = 0;

  for (int iter = 1; iter <= kMaxPowerIterations; ++iter) {
    solve_shifted_into(op, sigma, v.values(), std::span<double>(v.raw()), scratch);
    const double vmax = v.max();
    require(vmax > 0.0 && std::isfinite(vmax), ErrorCode::NonConvergence,
            "mu1: inverse iteration left the positive cone");
    for (int j = 0; j < n; ++j) v[j] /= vmax;

    av = op.apply(v);
    double num = 0.0, den = 0.0, resid = 0.0;
    for (int j = 0; j < n; ++j) {
      const double wj = grid.weight(j);
      num += wj * av[j] * v[j];
      den += wj * v[j] * v[j];
    }
    const double next = num / den;
    for (int j = 0; j < n; ++j) resid = std::max(resid, std::fabs(av[j] - next * v[j]));

    stationary = (std::fabs(next - value) <= tol::eigen_dvalue * std::max(1.0, std::fabs(next)))
                     ? stationary + 1
                     : 0;
    value = next;
    if (stationary >= 2 && resid <= tol::eigen_residual)
      return {value, std::move(v), iter, resid};
  }
  fail(ErrorCode::NonConvergence, "mu1: inverse power iteration did not converge");
}

double delayed_scalar_principal(double d, double tau, double gamma, const Field& m,
                                const Field& q) {
  require(tau >= 0.0 && gamma >= 0.0, ErrorCode::InvalidArgument,
          "delayed_scalar_principal: tau and gamma must be nonnegative");
  require(m.min() >= 0.0, ErrorCode::InvalidArgument,
          "delayed_scalar_principal: m must be nonnegative");
  require(m.grid() == q.grid(), ErrorCode::InvalidArgument,
          "delayed_scalar_principal: m and q live on different grids");

  const Grid& grid = m.grid();
  Field w(grid);
  auto potential = [&](double lambda) -> const Field& {
    const double factor = clamped_exp(-gamma * tau - lambda * tau);
    for (int j = 0; j < grid.size(); ++j) w[j] = factor * m[j] - q[j];
    return w;
  };

  if (tau == 0.0) return mu1(d, potential(0.0)).value;

  const double mu_undelayed = mu1(d, potential(0.0)).value;
  const double span = std::fabs(mu_undelayed) + m.max() + 1.0;
  auto g = [&](double lambda) { return mu1(d, potential(lambda)).value - lambda; };
  return decreasing_root(g, span, "delayed_scalar_principal");
}

SystemEigenResult cooperative_mu(double d1, double d2, const Field& a11, const Field& a12,
                                 const Field& a21, const Field& a22) {
  const Grid& grid = a11.grid();
  const int n = grid.size();
  require(a12.grid() == grid && a21.grid() == grid && a22.grid() == grid,
          ErrorCode::InvalidArgument, "cooperative_mu: coefficient grids differ");
  require(a12.min() >= -1e-12 && a21.min() >= -1e-12, ErrorCode::CouplingSignError,
          "cooperative_mu: off-diagonal couplings must be nonnegative");

  // Tiny negative noise is clamped; the Perron structure needs >= 0.
  Field q1 = a12, q2 = a21;
  for (int j = 0; j < n; ++j) {
    q1[j] = std::max(q1[j], 0.0);
    q2[j] = std::max(q2[j], 0.0);
  }

  const auto op1 = TridiagonalOperator::laplacian(grid, d1);
  const auto op2 = TridiagonalOperator::laplacian(grid, d2);
  detail::CoupledOperator A(op1, op2, a11, a22, q1, q2);

  double bound = 0.0;
  for (int j = 0; j < n; ++j)
    bound = std::max({bound, a11[j] + q1[j], a22[j] + q2[j]});
  const double sigma = bound + 1.0;
  detail::CoupledBandedLU lu(A, sigma);

  Field psi1 = constant_field(grid, 1.0), psi2 = constant_field(grid, 1.0);
  Field au(grid), av(grid);
  double value = 0.0;
  int stationary = 0;

  for (int iter = 1; iter <= kMaxPowerIterations; ++iter) {
    lu.solve(psi1.values(), psi2.values(), std::span<double>(psi1.raw()),
             std::span<double>(psi2.raw()));
    const double norm = std::max(psi1.max(), psi2.max());
    require(norm > 0.0 && std::isfinite(norm), ErrorCode::NonConvergence,
            "cooperative_mu: iteration left the positive cone");
    for (int j = 0; j < n; ++j) {
      psi1[j] /= norm;
      psi2[j] /= norm;
    }

    A.apply(psi1.values(), psi2.values(), std::span<double>(au.raw()),
            std::span<double>(av.raw()));
    double num = 0.0, den = 0.0, resid = 0.0;
    for (int j = 0; j < n; ++j) {
      const double wj = grid.weight(j);
      num += wj * (au[j] * psi1[j] + av[j] * psi2[j]);
      den += wj * (psi1[j] * psi1[j] + psi2[j] * psi2[j]);
    }
    const double next = num / den;
    for (int j = 0; j < n; ++j)
      resid = std::max({resid, std::fabs(au[j] - next * psi1[j]),
                        std::fabs(av[j] - next * psi2[j])});

    stationary = (std::fabs(next - value) <= tol::eigen_dvalue * std::max(1.0, std::fabs(next)))
                     ? stationary + 1
                     : 0;
    value = next;
    if (stationary >= 2 && resid <= tol::eigen_residual)
      return {value, std::move(psi1), std::move(psi2), iter, resid};
  }
  fail(ErrorCode::NonConvergence, "cooperative_mu: inverse power iteration did not converge");
}

LinearizationData linearize_at(const SampledParams& sp, const Field& u, const Field& v) {
  require(u.grid() == sp.grid && v.grid() == sp.grid, ErrorCode::InvalidArgument,
          "linearize_at: state grids do not match the parameter grid");
  require(u.min() > 0.0 && v.min() > 0.0, ErrorCode::NotASteadyState,
          "linearize_at: (u, v) must be componentwise positive");
  const double res = coupled_residual(sp, u, v);
  require(res <= tol::steady_state_input, ErrorCode::NotASteadyState,
          "linearize_at: coupled steady-state residual " + std::to_string(res) +
              " exceeds 1e-8");

  const int n = sp.grid.size();
  LinearizationData lin{u, v, Field(sp.grid), Field(sp.grid), Field(sp.grid), Field(sp.grid)};
  for (int j = 0; j < n; ++j) {
    lin.two_u_plus_cv[j] = 2.0 * u[j] + sp.params.c * v[j];
    lin.bu_plus_two_v[j] = sp.params.b * u[j] + 2.0 * v[j];
    lin.cu[j] = sp.params.c * u[j];
    lin.bv[j] = sp.params.b * v[j];
  }
  return lin;
}

namespace {

double system_h(const LinearizationData& lin, const SampledParams& sp, double s) {
  const int n = sp.grid.size();
  Field a11(sp.grid), a22(sp.grid);
  const double f1 = clamped_exp(-sp.params.gamma1 * sp.params.tau1 - s * sp.params.tau1);
  const double f2 = clamped_exp(-sp.params.gamma2 * sp.params.tau2 - s * sp.params.tau2);
  for (int j = 0; j < n; ++j) {
    a11[j] = f1 * sp.m1[j] - lin.two_u_plus_cv[j];
    a22[j] = f2 * sp.m2[j] - lin.bu_plus_two_v[j];
  }
  return cooperative_mu(sp.params.d1, sp.params.d2, a11, lin.cu, lin.bv, a22).value;
}

}  // namespace

double system_lambda1(const LinearizationData& lin, const SampledParams& sp) {
  return system_h(lin, sp, 0.0);
}

double delayed_system_principal(const LinearizationData& lin, const SampledParams& sp) {
  require(sp.m1.min() >= 0.0 && sp.m2.min() >= 0.0, ErrorCode::InvalidArgument,
          "delayed_system_principal: growth profiles must be nonnegative");

  const double lambda1 = system_h(lin, sp, 0.0);
  if (sp.params.tau1 == 0.0 && sp.params.tau2 == 0.0) return lambda1;

  const double span = std::fabs(lambda1) + std::max(sp.m1.max(), sp.m2.max()) + 1.0;
  auto g = [&](double s) { return system_h(lin, sp, s) - s; };
  return decreasing_root(g, span, "delayed_system_principal");
}

}  // namespace lvstage
