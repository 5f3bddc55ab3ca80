#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bruss/noise.hpp"

namespace bruss {

/// Molecule counts of the four species (X, Y and the inert products D, E).
struct JumpState {
  std::int64_t X = 0;
  std::int64_t Y = 0;
  std::int64_t D = 0;
  std::int64_t E = 0;
};

/// Mass-action rate constants, infinite-pool counts A and B, and the system
/// volume V.
struct RateConstants {
  double gamma1 = 1.0, gamma2 = 1.0, gamma3 = 1.0, gamma4 = 1.0;
  std::int64_t A = 1000, B = 1000;
  double V = 1000.0;

  void validate() const {
    if (!(gamma1 > 0.0 && gamma2 > 0.0 && gamma3 > 0.0 && gamma4 > 0.0))
      throw std::invalid_argument("RateConstants: gammas must be positive");
    if (!(A > 0 && B > 0))
      throw std::invalid_argument("RateConstants: A and B must be positive");
    if (!(V > 0.0)) throw std::invalid_argument("RateConstants: V must be positive");
  }

  /// Rate-equation analogues under the volume rescaling A~ = A/V, B~ = B/V:
  /// a = gamma1 A~ and b = gamma2 B~.
  double matched_a() const { return gamma1 * static_cast<double>(A) / V; }
  double matched_b() const { return gamma2 * static_cast<double>(B) / V; }
};

/// Mass-action propensities of the four channels:
///   (gamma1 A, gamma2 B X / V, gamma3 X (X-1) Y / V^2, gamma4 X).
std::array<double, 4> propensities(const RateConstants& rc, const JumpState& z);

/// State-change vectors nu_k over (X, Y, D, E), indexed by reaction.
const std::array<std::array<int, 4>, 4>& state_change_vectors();

/// Stateful wrapper over the counter-based uniform stream; one draw per call.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  double uniform() { return uniform01(seed_, n_++); }
  std::uint64_t draws() const { return n_; }

 private:
  std::uint64_t seed_;
  std::uint64_t n_ = 0;
};

struct JumpStep {
  double wait = 0.0;
  int reaction = 0;  // 0-based channel index
  JumpState next;
};

/// One step of Gillespie's direct method: exponential waiting time with rate
/// alpha0, channel k with probability alpha_k/alpha0, state advanced by nu_k.
/// Throws if every propensity vanishes (unreachable while A > 0).
JumpStep direct_method_step(const RateConstants& rc, const JumpState& z,
                            CounterRng& rng);

/// Piecewise-constant sample path of the jump process: the state at times[i]
/// is states[i], constant until the next event; reactions[i] is the channel
/// fired at times[i] (-1 for the initial entry at t = 0).
struct JumpPath {
  std::vector<double> times;
  std::vector<JumpState> states;
  std::vector<int> reactions;
};

/// Simulate until t_end; reproducible given the seed. Aborts with a
/// diagnostic when `max_events` is exceeded.
JumpPath simulate_jump(const RateConstants& rc, JumpState z0, double t_end,
                       std::uint64_t seed, std::uint64_t max_events = 100000000ULL);

/// Streaming variant: visitor(t, reaction, state) per event, no storage.
template <class Visitor>
void simulate_jump_visit(const RateConstants& rc, JumpState z0, double t_end,
                         std::uint64_t seed, std::uint64_t max_events,
                         Visitor&& visit) {
  rc.validate();
  if (!(t_end > 0.0))
    throw std::invalid_argument("simulate_jump: t_end must be positive");
  CounterRng rng(seed);
  JumpState z = z0;
  double t = 0.0;
  for (std::uint64_t events = 0;; ++events) {
    if (events >= max_events)
      throw std::runtime_error("simulate_jump: event cap exceeded (" +
                               std::to_string(max_events) + " events before t_end)");
    const JumpStep step = direct_method_step(rc, z, rng);
    if (t + step.wait > t_end) break;
    t += step.wait;
    z = step.next;
    visit(t, step.reaction, z);
  }
}

}  // namespace bruss
