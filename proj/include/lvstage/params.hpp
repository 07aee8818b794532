#ifndef LVSTAGE_PARAMS_HPP
#define LVSTAGE_PARAMS_HPP

#include <cmath>
#include <string>

#include "lvstage/grid.hpp"
#include "lvstage/profile.hpp"

namespace lvstage {

/// Parameter point of the competition model: diffusion rates, maturation
/// delays and immature death rates per species, interspecific coefficients,
/// and the heterogeneous growth profiles.
struct ModelParams {
  double d1, d2;
  double tau1 = 0.0, tau2 = 0.0;
  double gamma1 = 0.0, gamma2 = 0.0;
  double b, c;
  Profile m1, m2;
  MplusMode mplus = MplusMode::Strict;

  double delta1() const { return std::exp(-gamma1 * tau1); }
  double delta2() const { return std::exp(-gamma2 * tau2); }
  bool weak_competition() const { return b * c <= 1.0; }

  /// Membership in the admissible parameter set (d > 0, delays/death rates
  /// and competition coefficients as required). Throws InvalidArgument.
  void validate() const;
};

/// ModelParams with the growth profiles sampled (and positivity-checked)
/// on a concrete grid.
struct SampledParams {
  ModelParams params;
  Grid grid;
  Field m1, m2;
  std::string warning;  // relaxed-positivity notes, if any

  SampledParams(const ModelParams& p, const Grid& g);
};

/// Sup-norm residual of the coupled stationary system
///   d1 Lap(u) + delta1 m1 u - u^2 - c u v = 0
///   d2 Lap(v) + delta2 m2 v - b u v - v^2 = 0
/// shared by every model variant (the delay drops out at steady state).
double coupled_residual(const SampledParams& sp, const Field& u, const Field& v);

}  // namespace lvstage

#endif
