#ifndef LVSTAGE_STEADY_HPP
#define LVSTAGE_STEADY_HPP

#include <string>

#include "lvstage/grid.hpp"

namespace lvstage {

/// Positive solution of the stationary logistic problem
///   d*Lap(theta) + delta*m(x)*theta - theta^2 = 0,  no-flux boundary,
/// with delta = exp(-gamma*tau) the through-maturation survival factor.
struct ThetaSolution {
  Field theta;
  double residual;  // sup norm of the discrete residual
  double delta;
  int iterations;
};

/// Sup norm of d*Lap(theta) + delta*m*theta - theta^2.
double logistic_residual(double d, double delta, const Field& m, const Field& theta);

/// Semitrivial steady-state profile theta_{d,tau,gamma,m}. Requires m >= 0
/// (the strictly positive case is the standard assumption; zeros are the
/// relaxed mode). Damped Newton from delta*m, falling back to implicit-Euler
/// time marching when Newton stalls.
ThetaSolution solve_theta(double d, double tau, double gamma, const Field& m);

/// theta_{1,delta}: same equation with survival factor delta in (0, 1] given
/// directly (the parametrization used when sweeping gamma1*tau1).
ThetaSolution rescaled_theta(double delta, double d, const Field& m);

/// The two independent routes behind solve_theta, exposed so they can be
/// cross-checked against each other.
ThetaSolution theta_newton_path(double d, double delta, const Field& m);
ThetaSolution theta_marching_path(double d, double delta, const Field& m,
                                  const Field* start = nullptr);

}  // namespace lvstage

#endif
