#pragma once

#include <cmath>
#include <stdexcept>

#include "bruss/mat2.hpp"

namespace bruss {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Model parameters of the stochastic Brusselator: inflow concentration a,
/// bifurcation parameter b, and multiplicative noise intensity sigma.
/// The Hopf threshold b_crit = 1 + a^2 is always recomputed from a.
struct Params {
  double a = 1.0;
  double b = 3.0;
  double sigma = 0.1;

  Params() = default;
  Params(double a_, double b_, double sigma_) : a(a_), b(b_), sigma(sigma_) {
    validate();
  }

  void validate() const {
    if (!(a > 0.0) || !std::isfinite(a))
      throw std::invalid_argument("Params: a must be positive");
    if (!(b > 0.0) || !std::isfinite(b))
      throw std::invalid_argument("Params: b must be positive");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
      throw std::invalid_argument("Params: sigma must be nonnegative");
  }
};

/// A point (x, y) of the state space, the closed positive quadrant.
struct State {
  double x = 0.0;
  double y = 0.0;
};

using Jacobian2x2 = Mat2;

enum class EquilibriumKind { Stable, Critical, Unstable };

/// Drift of the deterministic rate equation:
///   x' = a - (1+b) x + x^2 y,  y' = b x - x^2 y.
inline Vec2 drift_deterministic(const Params& p, const State& s) {
  const double x2y = s.x * s.x * s.y;
  return {p.a - (1.0 + p.b) * s.x + x2y, p.b * s.x - x2y};
}

/// Diffusion vector of the Stratonovich SDE: (-sigma x, +sigma x).
/// The two components cancel, so x + y carries no noise.
inline Vec2 diffusion(const Params& p, const State& s) {
  const double g = p.sigma * s.x;
  return {-g, g};
}

/// Stratonovich-to-Ito drift correction, (1/2) sum_j (dg/dz_j) g_j per
/// component. For g = (-sigma x, sigma x) this is (sigma^2 x / 2, -sigma^2 x / 2).
inline Vec2 wong_zakai_correction(const Params& p, const State& s) {
  const double c = 0.5 * p.sigma * p.sigma * s.x;
  return {c, -c};
}

/// Ito drift, derived as deterministic drift plus the Wong-Zakai correction
/// rather than written out a second time.
inline Vec2 ito_drift(const Params& p, const State& s) {
  const Vec2 f = drift_deterministic(p, s);
  const Vec2 c = wong_zakai_correction(p, s);
  return {f.x + c.x, f.y + c.y};
}

/// Jacobian of the deterministic drift.
inline Jacobian2x2 jacobian(const Params& p, const State& s) {
  const double xy2 = 2.0 * s.x * s.y;
  const double x2 = s.x * s.x;
  return {-(1.0 + p.b) + xy2, x2, p.b - xy2, -x2};
}

/// The unique equilibrium (a, b/a) of the rate equation.
inline State equilibrium(const Params& p) { return {p.a, p.b / p.a}; }

/// Hopf threshold b_crit(a) = 1 + a^2.
inline double hopf_threshold(double a) { return 1.0 + a * a; }

/// Stability of the equilibrium by the sign of b - b_crit. Equality is
/// decided with absolute tolerance 1e-12, since parameter studies set
/// b = b_crit literally.
inline EquilibriumKind classify_equilibrium(const Params& p) {
  const double gap = p.b - hopf_threshold(p.a);
  if (std::fabs(gap) <= 1e-12) return EquilibriumKind::Critical;
  return gap < 0.0 ? EquilibriumKind::Stable : EquilibriumKind::Unstable;
}

}  // namespace bruss
