#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "bruss/model.hpp"
#include "bruss/noise.hpp"

namespace bruss {

/// Guard rails of a single Euler-Maruyama step. The exact flow preserves the
/// open positive quadrant but the discrete map can overshoot, so coordinates
/// are clamped from below at `floor`; any coordinate beyond `blowup` (or a
/// non-finite one) aborts the run.
struct StepLimits {
  double floor = 1e-12;
  double blowup = 1e9;
};

/// Numerical blow-up, carrying the offending step index and state.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(std::size_t step, State s)
      : std::runtime_error("numerical blow-up at step " + std::to_string(step)),
        step_(step),
        state_(s) {}

  std::size_t step() const { return step_; }
  State state() const { return state_; }

 private:
  std::size_t step_;
  State state_;
};

/// A recorded sample path: states at times t_n = n * h * stride.
struct Trajectory {
  double h = 0.0;
  std::size_t stride = 1;
  std::vector<double> times;
  std::vector<State> states;
  std::size_t clamp_count = 0;  // how often the positivity floor fired
};

/// Euclidean distance between two shared-noise trajectories over time.
struct DistanceSeries {
  std::vector<double> times;
  std::vector<double> d;
};

struct TwoPointResult {
  Trajectory first;
  Trajectory second;
  DistanceSeries distance;
};

/// One Euler-Maruyama step of the Ito system:
///   s + h * ito_drift(p, s) + diffusion(p, s) * dW,
/// followed by the positivity floor. `step_index` only labels diagnostics.
State em_step(const Params& p, const State& s, double dW, double h,
              const StepLimits& limits = {}, std::size_t step_index = 0);

/// Iterate em_step along `path` until t_end, recording every `stride`-th
/// state (the initial state is always recorded). Requires
/// t_end <= path.duration(); throws BlowupError on divergence.
Trajectory integrate(const Params& p, State s0, const NoisePath& path,
                     double t_end, std::size_t stride = 1,
                     const StepLimits& limits = {});

/// Two-point motion: both initial conditions consume the identical increment
/// sequence; the distance series is evaluated at the recorded times.
TwoPointResult two_point(const Params& p, State s0, State s1,
                         const NoisePath& path, double t_end,
                         std::size_t stride = 1, const StepLimits& limits = {});

}  // namespace bruss
