#include "lvstage/steady.hpp"

#include <algorithm>
#include <cmath>

#include "lvstage/tolerances.hpp"

namespace lvstage {

namespace {

void check_m(const Field& m) {
  require(m.finite(), ErrorCode::InvalidArgument, "growth profile is not finite");
  require(m.min() >= 0.0, ErrorCode::InvalidArgument,
          "growth profile must be nonnegative (strict or relaxed positivity)");
}

Field residual_field(const TridiagonalOperator& op, double delta, const Field& m,
                     const Field& theta) {
  Field r = op.apply(theta);
  for (int j = 0; j < theta.size(); ++j) r[j] += theta[j] * (delta * m[j] - theta[j]);
  return r;
}

// For m >= 0 not identically zero, mu1(d, delta*m) >= mean(delta*m) > 0, so
// the positive state exists; a collapsed iterate is a solver failure, not
// genuine extinction (that case is delta*m == 0, rejected upfront).
void check_positive(const Field& theta, double delta, const Field& m, ErrorCode on_fail) {
  const double scale = std::max(1.0, delta * m.max());
  require(theta.max() > 1e-8 * scale && theta.min() > 0.0, on_fail,
          "steady-state solve collapsed to a nonpositive profile");
}

}  // namespace

double logistic_residual(double d, double delta, const Field& m, const Field& theta) {
  auto op = TridiagonalOperator::laplacian(theta.grid(), d);
  return residual_field(op, delta, m, theta).sup_norm();
}

ThetaSolution theta_marching_path(double d, double delta, const Field& m,
                                  const Field* start) {
  check_m(m);
  const Grid& grid = m.grid();
  auto op = TridiagonalOperator::laplacian(grid, d);

  require(delta * m.max() > 0.0, ErrorCode::ExtinctProfile,
          "delta*m vanishes identically; only the zero state exists");

  Field theta = start ? *start : Field(grid);
  if (!start) {
    for (int j = 0; j < grid.size(); ++j) theta[j] = delta * m[j];
    // Relaxed-mode profiles may vanish at nodes; lift the guess off zero so
    // the marching map keeps strictly positive iterates.
    const double floor_ = 1e-3 * delta * m.max();
    for (int j = 0; j < grid.size(); ++j) theta[j] = std::max(theta[j], floor_);
  }

  const double dt = std::min(0.1, 0.5 / std::max(1.0, delta * m.max()));
  const double sigma = 1.0 / dt;
  std::vector<double> scratch;
  Field rhs(grid);

  const int max_steps = 400000;
  for (int step = 1; step <= max_steps; ++step) {
    for (int j = 0; j < grid.size(); ++j)
      rhs[j] = theta[j] * (sigma + delta * m[j] - theta[j]);
    solve_shifted_into(op, sigma, rhs.values(), std::span<double>(theta.raw()), scratch);

    if (step % 16 == 0 || step == max_steps) {
      const double res = residual_field(op, delta, m, theta).sup_norm();
      if (res <= tol::steady) {
        check_positive(theta, delta, m, ErrorCode::ExtinctProfile);
        return {std::move(theta), res, delta, step};
      }
      if (theta.max() <= 1e-12 * std::max(1.0, delta * m.max()))
        fail(ErrorCode::ExtinctProfile,
             "time marching collapsed to the zero state (delta*m too weak)");
    }
  }
  fail(ErrorCode::NonConvergence, "theta time marching did not reach tolerance");
}

ThetaSolution theta_newton_path(double d, double delta, const Field& m) {
  check_m(m);
  const Grid& grid = m.grid();
  auto op = TridiagonalOperator::laplacian(grid, d);

  require(delta * m.max() > 0.0, ErrorCode::ExtinctProfile,
          "delta*m vanishes identically; only the zero state exists");

  Field theta(grid);
  for (int j = 0; j < grid.size(); ++j) theta[j] = delta * m[j];

  Field F = residual_field(op, delta, m, theta);
  double res = F.sup_norm();
  Field coeff(grid), trial(grid);

  for (int iter = 1; iter <= 80; ++iter) {
    if (res <= tol::steady) {
      check_positive(theta, delta, m, ErrorCode::NonConvergence);
      return {std::move(theta), res, delta, iter - 1};
    }
    // Solve (op + diag(delta*m - 2 theta)) s = -F via the shifted form with
    // shift 0 of the negated operator.
    for (int j = 0; j < grid.size(); ++j) coeff[j] = delta * m[j] - 2.0 * theta[j];
    Field s = solve_shifted(op.with_added_diagonal(coeff), 0.0, F);

    double lambda = 1.0;
    for (;;) {
      for (int j = 0; j < grid.size(); ++j) trial[j] = theta[j] + lambda * s[j];
      Field Ft = residual_field(op, delta, m, trial);
      const double rt = Ft.sup_norm();
      if (rt < res * (1.0 - 1e-4 * lambda)) {
        theta = trial;
        F = std::move(Ft);
        res = rt;
        break;
      }
      lambda *= 0.5;
      if (lambda < 1e-3)
        fail(ErrorCode::NonConvergence, "Newton line search stalled");
    }
  }
  fail(ErrorCode::NonConvergence, "Newton iteration did not reach tolerance");
}

ThetaSolution rescaled_theta(double delta, double d, const Field& m) {
  require(std::isfinite(delta) && delta > 0.0 && delta <= 1.0, ErrorCode::InvalidArgument,
          "delta must lie in (0, 1]");
  try {
    return theta_newton_path(d, delta, m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ExtinctProfile) throw;
    return theta_marching_path(d, delta, m);
  }
}

ThetaSolution solve_theta(double d, double tau, double gamma, const Field& m) {
  require(tau >= 0.0 && gamma >= 0.0, ErrorCode::InvalidArgument,
          "tau and gamma must be nonnegative");
  const double delta = std::exp(-gamma * tau);
  try {
    return theta_newton_path(d, delta, m);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ExtinctProfile) throw;
    return theta_marching_path(d, delta, m);
  }
}

}  // namespace lvstage
