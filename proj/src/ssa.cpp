#include "bruss/ssa.hpp"

#include <cmath>

namespace bruss {

std::array<double, 4> propensities(const RateConstants& rc, const JumpState& z) {
  const double x = static_cast<double>(z.X);
  const double y = static_cast<double>(z.Y);
  return {rc.gamma1 * static_cast<double>(rc.A),
          rc.gamma2 * static_cast<double>(rc.B) * x / rc.V,
          rc.gamma3 * x * (x - 1.0) * y / (rc.V * rc.V),
          rc.gamma4 * x};
}

const std::array<std::array<int, 4>, 4>& state_change_vectors() {
  // R1: A -> X, R2: B+X -> Y+D, R3: 2X+Y -> 3X, R4: X -> E.
  static const std::array<std::array<int, 4>, 4> nu = {{
      {{1, 0, 0, 0}},
      {{-1, 1, 1, 0}},
      {{1, -1, 0, 0}},
      {{-1, 0, 0, 1}},
  }};
  return nu;
}

namespace {

inline JumpState apply_reaction(const JumpState& z, int k) {
  const auto& nu = state_change_vectors()[static_cast<std::size_t>(k)];
  JumpState out{z.X + nu[0], z.Y + nu[1], z.D + nu[2], z.E + nu[3]};
  if (out.X < 0 || out.Y < 0 || out.D < 0 || out.E < 0)
    throw std::logic_error("ssa: reaction drove a count negative");
  return out;
}

}  // namespace

JumpStep direct_method_step(const RateConstants& rc, const JumpState& z,
                            CounterRng& rng) {
  const auto alpha = propensities(rc, z);
  const double alpha0 = alpha[0] + alpha[1] + alpha[2] + alpha[3];
  if (!(alpha0 > 0.0))
    throw std::logic_error("direct_method_step: total propensity is zero");

  const double u1 = rng.uniform();
  const double u2 = rng.uniform();
  const double wait = -std::log(u1) / alpha0;

  const double target = u2 * alpha0;
  double cum = 0.0;
  int k = -1;
  for (int j = 0; j < 4; ++j) {
    if (alpha[static_cast<std::size_t>(j)] <= 0.0) continue;
    k = j;  // rounding in the cumulative sum falls back to the last open channel
    cum += alpha[static_cast<std::size_t>(j)];
    if (target <= cum) break;
  }
  return {wait, k, apply_reaction(z, k)};
}

JumpPath simulate_jump(const RateConstants& rc, JumpState z0, double t_end,
                       std::uint64_t seed, std::uint64_t max_events) {
  JumpPath path;
  path.times.push_back(0.0);
  path.states.push_back(z0);
  path.reactions.push_back(-1);
  simulate_jump_visit(rc, z0, t_end, seed, max_events,
                      [&](double t, int k, const JumpState& z) {
                        path.times.push_back(t);
                        path.states.push_back(z);
                        path.reactions.push_back(k);
                      });
  return path;
}

}  // namespace bruss
