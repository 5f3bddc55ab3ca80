#include "bruss/integrator.hpp"

#include <cmath>

namespace bruss {

namespace {

inline State em_step_impl(const Params& p, const State& s, double dW, double h,
                          const StepLimits& limits, std::size_t step_index,
                          std::size_t& clamp_count) {
  const Vec2 f = ito_drift(p, s);
  const Vec2 g = diffusion(p, s);
  State out{s.x + h * f.x + g.x * dW, s.y + h * f.y + g.y * dW};

  if (!std::isfinite(out.x) || !std::isfinite(out.y) ||
      std::fabs(out.x) > limits.blowup || std::fabs(out.y) > limits.blowup)
    throw BlowupError(step_index, out);

  if (out.x < limits.floor) {
    out.x = limits.floor;
    ++clamp_count;
  }
  if (out.y < limits.floor) {
    out.y = limits.floor;
    ++clamp_count;
  }
  return out;
}

std::size_t step_count(const NoisePath& path, double t_end) {
  if (!(t_end >= 0.0))
    throw std::invalid_argument("integrate: t_end must be nonnegative");
  const auto n = static_cast<std::size_t>(std::llround(t_end / path.h()));
  if (n > path.length())
    throw std::invalid_argument("integrate: noise path shorter than t_end");
  return n;
}

}  // namespace

State em_step(const Params& p, const State& s, double dW, double h,
              const StepLimits& limits, std::size_t step_index) {
  if (!(h > 0.0)) throw std::invalid_argument("em_step: h must be positive");
  std::size_t dummy = 0;
  return em_step_impl(p, s, dW, h, limits, step_index, dummy);
}

Trajectory integrate(const Params& p, State s0, const NoisePath& path,
                     double t_end, std::size_t stride,
                     const StepLimits& limits) {
  if (stride == 0) throw std::invalid_argument("integrate: stride must be >= 1");
  const std::size_t n_steps = step_count(path, t_end);
  const double h = path.h();

  Trajectory traj;
  traj.h = h;
  traj.stride = stride;
  traj.times.reserve(n_steps / stride + 1);
  traj.states.reserve(n_steps / stride + 1);
  traj.times.push_back(0.0);
  traj.states.push_back(s0);

  State s = s0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    s = em_step_impl(p, s, path.increment(n), h, limits, n, traj.clamp_count);
    if ((n + 1) % stride == 0) {
      traj.times.push_back(static_cast<double>(n + 1) * h);
      traj.states.push_back(s);
    }
  }
  return traj;
}

TwoPointResult two_point(const Params& p, State s0, State s1,
                         const NoisePath& path, double t_end,
                         std::size_t stride, const StepLimits& limits) {
  TwoPointResult out;
  out.first = integrate(p, s0, path, t_end, stride, limits);
  out.second = integrate(p, s1, path, t_end, stride, limits);

  out.distance.times = out.first.times;
  out.distance.d.reserve(out.first.states.size());
  for (std::size_t i = 0; i < out.first.states.size(); ++i) {
    const double dx = out.first.states[i].x - out.second.states[i].x;
    const double dy = out.first.states[i].y - out.second.states[i].y;
    out.distance.d.push_back(std::sqrt(dx * dx + dy * dy));
  }
  return out;
}

}  // namespace bruss
