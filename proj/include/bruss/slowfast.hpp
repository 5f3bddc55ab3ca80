#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bruss/integrator.hpp"
#include "bruss/mat2.hpp"
#include "bruss/model.hpp"
#include "bruss/noise.hpp"

namespace bruss {

/// Parameters of the singularly perturbed formulation; epsilon = a/b is the
/// time-scale ratio. Round-trips with Params exactly (one division each way).
struct SlowFastParams {
  double a = 1.0;
  double epsilon = 1.0 / 3.0;
  double sigma = 0.1;

  SlowFastParams() = default;
  SlowFastParams(double a_, double epsilon_, double sigma_)
      : a(a_), epsilon(epsilon_), sigma(sigma_) {
    validate();
  }

  void validate() const {
    if (!(a > 0.0)) throw std::invalid_argument("SlowFastParams: a must be positive");
    if (!(epsilon > 0.0))
      throw std::invalid_argument("SlowFastParams: epsilon must be positive");
    if (!(sigma >= 0.0))
      throw std::invalid_argument("SlowFastParams: sigma must be nonnegative");
  }

  static SlowFastParams from_params(const Params& p) {
    return SlowFastParams(p.a, p.a / p.b, p.sigma);
  }
  Params to_params() const { return Params(a, a / epsilon, sigma); }
};

/// A point in the transformed coordinates (u, v) = (y, x + y); the valid
/// domain is v >= u >= 0.
struct SfState {
  double u = 0.0;
  double v = 0.0;
};

inline SfState to_slowfast(const State& s) { return {s.y, s.x + s.y}; }

/// Inverse map (u, v) -> (v - u, u); rejects points outside the image domain.
inline State from_slowfast(const SfState& sf) {
  if (sf.v < sf.u) throw std::invalid_argument("from_slowfast: requires v >= u");
  return {sf.v - sf.u, sf.u};
}

struct DriftDiffusion {
  Vec2 drift;
  Vec2 diffusion;
};

/// Slow-time system with the u-equation divided by epsilon, Stratonovich
/// coefficients:
///   du = [a(v-u)/eps - u(v-u)^2] dt + sigma (v-u) o dW
///   dv = [a - (v-u)] dt
/// The noise coefficient vanishes exactly on the critical manifold u = v.
DriftDiffusion slow_system(const SlowFastParams& sp, const SfState& sf);

/// Fast-time system (tau = t/eps), Stratonovich coefficients:
///   du = [a(v-u) - eps u(v-u)^2] dtau + sqrt(eps) sigma (v-u) o dW~
///   dv = eps [a - (v-u)] dtau
DriftDiffusion fast_system(const SlowFastParams& sp, const SfState& sf);

/// Stratonovich-to-Ito correction of the slow system, computed from the
/// partial derivatives of its diffusion vector (not copied by hand).
Vec2 slow_wong_zakai(const SlowFastParams& sp, const SfState& sf);

/// Ito drift of the slow system: Stratonovich drift + Wong-Zakai correction.
Vec2 slow_ito_drift(const SlowFastParams& sp, const SfState& sf);

/// Solution of the reduced (eps = 0) problem on the critical manifold:
/// u(t) = v(t) = u0 + a t, exactly.
inline SfState reduced_flow(const SlowFastParams& sp, double u0, double t) {
  const double z = u0 + sp.a * t;
  return {z, z};
}

/// Euclidean distance to the critical manifold S0 = {u = v}.
inline double critical_manifold_distance(const SfState& sf) {
  return std::fabs(sf.v - sf.u) / std::sqrt(2.0);
}

/// The u-nullcline v = u + a/(eps u); rejects u <= 0 (asymptote).
inline double nullcline_v(const SlowFastParams& sp, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("nullcline_v: requires u > 0");
  return u + sp.a / (sp.epsilon * u);
}

/// Jacobian of the layer vector field h(u,v) = (a(v-u), 0); its nontrivial
/// eigenvalue -a with eigenvector (1,0) makes S0 normally hyperbolic.
inline Mat2 layer_jacobian(const SlowFastParams& sp) {
  return {-sp.a, sp.a, 0.0, 0.0};
}

enum class Regime { I = 1, II = 2, III = 3, IV = 4 };

struct RegimeThresholds {
  double delta_s = 0.1;  // band around the critical manifold
  double delta_n = 0.1;  // band around the nullcline (vertical distance)
};

/// Deterministic, total classification of a point into the time-scale
/// regimes. Precedence: I (within delta_s of S0 and not past the nullcline),
/// then III (within delta_n of N), then II (negative u-drift, i.e. above the
/// nullcline band, the fast leftward sweep), else IV.
Regime classify_regime(const SlowFastParams& sp, const SfState& sf,
                       const RegimeThresholds& th = {});

/// Trajectory in transformed coordinates, times t_n = n * h * stride.
struct SfTrajectory {
  double h = 0.0;
  std::size_t stride = 1;
  std::vector<double> times;
  std::vector<SfState> states;
  std::size_t clamp_count = 0;
};

/// Euler-Maruyama on the Ito form of the slow system, sharing the step and
/// increments convention of the primary integrator. The positivity floor is
/// the original-coordinates floor transported through the map.
SfTrajectory integrate_slow(const SlowFastParams& sp, SfState s0,
                            const NoisePath& path, double t_end,
                            std::size_t stride = 1, const StepLimits& limits = {});

/// First time the trajectory crosses the nullcline, located by linear
/// interpolation of v - nullcline_v(u) between the bracketing samples;
/// std::nullopt when no crossing occurs.
std::optional<double> hitting_time_nullcline(const SlowFastParams& sp,
                                             const SfTrajectory& traj);

/// Cross-validation of the two formulations: integrates the original Ito
/// system at step h (aggregating the increments of `path`, whose own step
/// must divide h) against the transformed slow system at the native
/// resolution of `path`, and returns the maximum distance between
/// to_slowfast(original) and the transformed trajectory over the coarse time
/// grid. Shrinks at the scheme's strong order as h decreases toward path.h().
double transform_consistency_check(const Params& p, State s0,
                                   const NoisePath& path, double t_end,
                                   double h);

}  // namespace bruss
