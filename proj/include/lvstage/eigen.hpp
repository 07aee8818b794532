#ifndef LVSTAGE_EIGEN_HPP
#define LVSTAGE_EIGEN_HPP

#include "lvstage/grid.hpp"
#include "lvstage/params.hpp"

namespace lvstage {

struct EigenResult {
  double value;
  Field eigenfunction;  // strictly positive, normalized to max = 1
  int iterations;
  double residual;
};

struct SystemEigenResult {
  double value;
  Field psi1, psi2;  // componentwise nonnegative, joint max = 1
  int iterations;
  double residual;
};

/// Principal eigenvalue mu_1(d, w) of d*Lap(phi) + w*phi = mu*phi with
/// no-flux boundary: shifted inverse power iteration with shift max(w) + 1.
EigenResult mu1(double d, const Field& w);

/// Unique real root of lambda = mu_1(d, exp(-gamma*tau - lambda*tau)*m - q),
/// the principal eigenvalue of the delayed scalar problem at a semitrivial
/// state. Requires m >= 0 so the right side is nonincreasing in lambda;
/// solved by bisection on a sign-checked bracket. Its sign equals the sign
/// of mu_1(d, exp(-gamma*tau)*m - q).
double delayed_scalar_principal(double d, double tau, double gamma, const Field& m,
                                const Field& q);

/// Principal eigenvalue of the cooperative block system
///   lambda psi1 = d1 Lap(psi1) + a11 psi1 + a12 psi2
///   lambda psi2 = d2 Lap(psi2) + a21 psi1 + a22 psi2
/// with a12, a21 >= 0 (CouplingSignError beyond -1e-12). Inverse power
/// iteration with a shift above the Gershgorin bound.
SystemEigenResult cooperative_mu(double d1, double d2, const Field& a11, const Field& a12,
                                 const Field& a21, const Field& a22);

/// Coefficient fields of the linearization at a positive steady state (u, v)
/// after the sign flip psi2 = -phi2 that makes the system cooperative.
struct LinearizationData {
  Field u, v;
  Field two_u_plus_cv;
  Field bu_plus_two_v;
  Field cu, bv;
};

/// Builds LinearizationData, checking that (u, v) is a componentwise positive
/// steady state (coupled residual <= 1e-8, else NotASteadyState).
LinearizationData linearize_at(const SampledParams& sp, const Field& u, const Field& v);

/// lambda_1: principal eigenvalue of the undelayed cooperative linearization
/// (the delay exponentials frozen at lambda = 0).
double system_lambda1(const LinearizationData& lin, const SampledParams& sp);

/// Principal eigenvalue of the delayed linearization, computed as the unique
/// fixed point s = h(s) of the monotone map
///   h(s) = cooperative principal eigenvalue with growth coefficients
///          exp(-gamma_i*tau_i - s*tau_i) * m_i.
/// h(0) equals system_lambda1 on the same code path, and the returned root
/// has the same sign as it.
double delayed_system_principal(const LinearizationData& lin, const SampledParams& sp);

}  // namespace lvstage

#endif
