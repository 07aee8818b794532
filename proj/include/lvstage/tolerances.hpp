#ifndef LVSTAGE_TOLERANCES_HPP
#define LVSTAGE_TOLERANCES_HPP

namespace lvstage::tol {

// Slack for "nonnegative" fields; IMEX steps may undershoot at machine scale.
inline constexpr double eps_pos = 1e-10;

// Sup-norm residual target for steady-state solves.
inline constexpr double steady = 1e-10;

// Eigen iterations stop when the eigenvalue is stationary to this relative
// change over two iterations and the residual is below eigen_residual.
inline constexpr double eigen_dvalue = 1e-12;
inline constexpr double eigen_residual = 1e-10;

// |value| below this band is treated as an exact zero when labeling regions.
inline constexpr double neutral = 1e-7;

// |g(lambda)| target for the delayed principal-eigenvalue root solves.
inline constexpr double root = 1e-10;

// Bisection tolerance for the delta thresholds on (0, 1).
inline constexpr double threshold = 1e-8;

// Residual below which a pair (u, v) is accepted as a steady state.
inline constexpr double steady_state_input = 1e-8;

// ||theta1 - c*theta2|| bound certifying the continuum identity.
inline constexpr double continuum_identity = 1e-6;

// Default convergence tolerance and dwell time for simulations.
inline constexpr double conv_default = 1e-3;
inline constexpr double dwell_default = 10.0;

}  // namespace lvstage::tol

#endif
