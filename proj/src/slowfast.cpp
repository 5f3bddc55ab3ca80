#include "bruss/slowfast.hpp"

#include <cmath>

namespace bruss {

DriftDiffusion slow_system(const SlowFastParams& sp, const SfState& sf) {
  const double w = sf.v - sf.u;
  return {{sp.a * w / sp.epsilon - sf.u * w * w, sp.a - w},
          {sp.sigma * w, 0.0}};
}

DriftDiffusion fast_system(const SlowFastParams& sp, const SfState& sf) {
  const double w = sf.v - sf.u;
  return {{sp.a * w - sp.epsilon * sf.u * w * w, sp.epsilon * (sp.a - w)},
          {std::sqrt(sp.epsilon) * sp.sigma * w, 0.0}};
}

Vec2 slow_wong_zakai(const SlowFastParams& sp, const SfState& sf) {
  // g(u,v) = (sigma (v-u), 0); correction_l = (1/2) sum_j dg_l/dz_j * g_j.
  const Vec2 g = slow_system(sp, sf).diffusion;
  const double dgu_du = -sp.sigma;
  const double dgu_dv = sp.sigma;
  return {0.5 * (dgu_du * g.x + dgu_dv * g.y), 0.0};
}

Vec2 slow_ito_drift(const SlowFastParams& sp, const SfState& sf) {
  const Vec2 f = slow_system(sp, sf).drift;
  const Vec2 c = slow_wong_zakai(sp, sf);
  return {f.x + c.x, f.y + c.y};
}

Regime classify_regime(const SlowFastParams& sp, const SfState& sf,
                       const RegimeThresholds& th) {
  const double above_nullcline =
      sf.u > 0.0 ? sf.v - nullcline_v(sp, sf.u) : -1.0;

  if (critical_manifold_distance(sf) <= th.delta_s && above_nullcline <= 0.0)
    return Regime::I;
  if (sf.u > 0.0 && std::fabs(above_nullcline) <= th.delta_n)
    return Regime::III;
  // Above the nullcline band the u-drift is negative: the fast sweep left.
  if (slow_system(sp, sf).drift.x < 0.0) return Regime::II;
  return Regime::IV;
}

namespace {

// Mirror of the original-coordinates floor x,y >= floor transported through
// (u, v) = (y, x + y). Applied only when it actually fires, so interior
// steps are left bit-for-bit alone.
inline SfState apply_floor(const SfState& s, double floor_val,
                           std::size_t& clamp_count) {
  SfState out = s;
  if (out.u < floor_val) {
    out.u = floor_val;
    ++clamp_count;
  }
  if (out.v - out.u < floor_val) {
    out.v = out.u + floor_val;
    ++clamp_count;
  }
  return out;
}

inline SfState slow_em_step(const SlowFastParams& sp, const SfState& s,
                            double dW, double h, const StepLimits& limits,
                            std::size_t step_index, std::size_t& clamp_count) {
  const Vec2 f = slow_ito_drift(sp, s);
  const Vec2 g = slow_system(sp, s).diffusion;
  SfState out{s.u + h * f.x + g.x * dW, s.v + h * f.y + g.y * dW};
  if (!std::isfinite(out.u) || !std::isfinite(out.v) ||
      std::fabs(out.u) > limits.blowup || std::fabs(out.v) > limits.blowup)
    throw BlowupError(step_index, State{out.v - out.u, out.u});
  return apply_floor(out, limits.floor, clamp_count);
}

}  // namespace

SfTrajectory integrate_slow(const SlowFastParams& sp, SfState s0,
                            const NoisePath& path, double t_end,
                            std::size_t stride, const StepLimits& limits) {
  if (stride == 0)
    throw std::invalid_argument("integrate_slow: stride must be >= 1");
  const auto n_steps = static_cast<std::size_t>(std::llround(t_end / path.h()));
  if (n_steps > path.length())
    throw std::invalid_argument("integrate_slow: noise path shorter than t_end");
  const double h = path.h();

  SfTrajectory traj;
  traj.h = h;
  traj.stride = stride;
  traj.times.push_back(0.0);
  traj.states.push_back(s0);

  SfState s = s0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    s = slow_em_step(sp, s, path.increment(n), h, limits, n, traj.clamp_count);
    if ((n + 1) % stride == 0) {
      traj.times.push_back(static_cast<double>(n + 1) * h);
      traj.states.push_back(s);
    }
  }
  return traj;
}

std::optional<double> hitting_time_nullcline(const SlowFastParams& sp,
                                             const SfTrajectory& traj) {
  if (traj.states.empty()) return std::nullopt;

  auto gap = [&](const SfState& s) { return s.v - nullcline_v(sp, s.u); };

  double g_prev = gap(traj.states.front());
  if (g_prev == 0.0) return traj.times.front();
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const double g = gap(traj.states[i]);
    if (g == 0.0) return traj.times[i];
    if ((g_prev < 0.0) != (g < 0.0)) {
      const double t0 = traj.times[i - 1];
      const double t1 = traj.times[i];
      return t0 + (t1 - t0) * g_prev / (g_prev - g);
    }
    g_prev = g;
  }
  return std::nullopt;
}

double transform_consistency_check(const Params& p, State s0,
                                   const NoisePath& path, double t_end,
                                   double h) {
  if (!(h > 0.0))
    throw std::invalid_argument("transform_consistency_check: h must be positive");
  const double h_fine = path.h();
  const auto k = static_cast<std::size_t>(std::llround(h / h_fine));
  if (k == 0 || std::fabs(static_cast<double>(k) * h_fine - h) > 1e-9 * h)
    throw std::invalid_argument(
        "transform_consistency_check: path step must divide h");
  const auto n_coarse = static_cast<std::size_t>(std::llround(t_end / h));
  if (n_coarse * k > path.length())
    throw std::invalid_argument(
        "transform_consistency_check: noise path shorter than t_end");

  const SlowFastParams sp = SlowFastParams::from_params(p);
  const StepLimits limits{};

  State orig = s0;
  SfState transformed = to_slowfast(s0);
  std::size_t clamps_orig = 0, clamps_sf = 0;
  double worst = 0.0;

  for (std::size_t n = 0; n < n_coarse; ++n) {
    double dW_coarse = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      const double dW = path.increment(n * k + j);
      dW_coarse += dW;
      transformed = slow_em_step(sp, transformed, dW, h_fine, limits,
                                 n * k + j, clamps_sf);
    }
    {
      const Vec2 f = ito_drift(p, orig);
      const Vec2 g = diffusion(p, orig);
      State ns{orig.x + h * f.x + g.x * dW_coarse,
               orig.y + h * f.y + g.y * dW_coarse};
      if (!std::isfinite(ns.x) || !std::isfinite(ns.y) ||
          std::fabs(ns.x) > limits.blowup || std::fabs(ns.y) > limits.blowup)
        throw BlowupError(n, ns);
      if (ns.x < limits.floor) { ns.x = limits.floor; ++clamps_orig; }
      if (ns.y < limits.floor) { ns.y = limits.floor; ++clamps_orig; }
      orig = ns;
    }
    const SfState mapped = to_slowfast(orig);
    const double du = mapped.u - transformed.u;
    const double dv = mapped.v - transformed.v;
    worst = std::max(worst, std::sqrt(du * du + dv * dv));
  }
  return worst;
}

}  // namespace bruss
