#include <doctest.h>

#include <cmath>
#include <optional>

#include "bruss/integrator.hpp"
#include "bruss/model.hpp"
#include "bruss/noise.hpp"
#include "bruss/slowfast.hpp"

using namespace bruss;

TEST_CASE("coordinate change and its inverse") {
  {
    const SfState sf = to_slowfast(State{1.0, 2.0});
    CHECK(sf.u == 2.0);
    CHECK(sf.v == 3.0);
  }
  {
    const SfState origin = to_slowfast(State{0.0, 0.0});
    CHECK(origin.u == 0.0);
    CHECK(origin.v == 0.0);
  }
  {
    const State s = from_slowfast(SfState{2.0, 3.0});
    CHECK(s.x == 1.0);
    CHECK(s.y == 2.0);
  }
  {
    const State s = from_slowfast(SfState{1.5, 1.5});  // boundary of the image
    CHECK(s.x == 0.0);
    CHECK(s.y == 1.5);
  }
  CHECK_THROWS_AS(from_slowfast(SfState{2.0, 1.0}), std::invalid_argument);

  // Round trips. Floating subtraction cannot always undo the addition
  // bit-for-bit, so the recovered component is checked to one ulp of the
  // magnitude that entered the sum.
  for (std::uint64_t i = 0; i < 5000; ++i) {
    const State s{0.1 + 10.0 * uniform01(70, 2 * i), 0.1 + 10.0 * uniform01(70, 2 * i + 1)};
    const double ulp_scale = 2.3e-16 * (s.x + s.y);
    const State back = from_slowfast(to_slowfast(s));
    REQUIRE(back.y == s.y);  // exact: untouched component
    REQUIRE(std::fabs(back.x - s.x) <= ulp_scale);

    const SfState sf{s.x, s.x + s.y};  // valid v >= u
    const SfState sf_back = to_slowfast(from_slowfast(sf));
    REQUIRE(sf_back.u == sf.u);
    REQUIRE(std::fabs(sf_back.v - sf.v) <= ulp_scale);
  }
}

TEST_CASE("SlowFastParams round-trips with Params") {
  const Params p(1.0, 4.0, 0.2);
  const SlowFastParams sp = SlowFastParams::from_params(p);
  CHECK(sp.epsilon == 0.25);
  const Params back = sp.to_params();
  CHECK(back.b == 4.0);
  CHECK(back.a == 1.0);
  CHECK(back.sigma == 0.2);
  CHECK_THROWS_AS(SlowFastParams(1.0, 0.0, 0.1), std::invalid_argument);
}

TEST_CASE("slow system: noise and u-drift vanish on the critical manifold") {
  const SlowFastParams sp(1.0, 0.25, 0.3);
  const auto [drift, diff] = slow_system(sp, SfState{3.0, 3.0});
  CHECK(drift.x == 0.0);
  CHECK(drift.y == sp.a);
  CHECK(diff.x == 0.0);  // coefficient, not a statistic
  CHECK(diff.y == 0.0);
}

TEST_CASE("slow system: transform of the original field (epsilon = 1 case)") {
  // With b = a the transformed drift must equal L f(L^{-1} z) for the linear
  // change of coordinates L(x,y) = (y, x+y).
  const SlowFastParams sp(1.3, 1.0, 0.0);
  const Params p = sp.to_params();
  for (std::uint64_t i = 0; i < 300; ++i) {
    const double u = 0.1 + 4.0 * uniform01(71, 2 * i);
    const double v = u + 4.0 * uniform01(71, 2 * i + 1);
    const Vec2 f = drift_deterministic(p, from_slowfast(SfState{u, v}));
    const Vec2 lf{f.y, f.x + f.y};
    const Vec2 got = slow_system(sp, SfState{u, v}).drift;
    REQUIRE(got.x == doctest::Approx(lf.x).epsilon(1e-12));
    REQUIRE(got.y == doctest::Approx(lf.y).epsilon(1e-12));
  }
}

TEST_CASE("slow system: deterministic drift matches direct substitution") {
  const SlowFastParams sp(1.0, 0.2, 0.0);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const double u = 0.1 + 4.0 * uniform01(72, 2 * i);
    const double v = u + 4.0 * uniform01(72, 2 * i + 1);
    const double w = v - u;
    const Vec2 got = slow_system(sp, SfState{u, v}).drift;
    REQUIRE(got.x ==
            doctest::Approx((sp.a * w - sp.epsilon * u * w * w) / sp.epsilon)
                .epsilon(1e-12));
    REQUIRE(got.y == doctest::Approx(sp.a - w).epsilon(1e-12));
  }
}

TEST_CASE("fast system is the epsilon-rescaled slow system") {
  const SlowFastParams sp(1.0, 0.25, 0.4);
  for (std::uint64_t i = 0; i < 300; ++i) {
    const double u = 0.1 + 4.0 * uniform01(73, 2 * i);
    const double v = u + 4.0 * uniform01(73, 2 * i + 1);
    const auto slow = slow_system(sp, SfState{u, v});
    const auto fast = fast_system(sp, SfState{u, v});
    REQUIRE(fast.drift.x == doctest::Approx(sp.epsilon * slow.drift.x).epsilon(1e-12));
    REQUIRE(fast.drift.y == doctest::Approx(sp.epsilon * slow.drift.y).epsilon(1e-12));
    // Noise scales as sqrt(eps).
    REQUIRE(fast.diffusion.x ==
            doctest::Approx(std::sqrt(sp.epsilon) * slow.diffusion.x).epsilon(1e-14));
    REQUIRE(fast.diffusion.y == 0.0);
  }

  // Layer limit: the cubic term and the v-motion die with epsilon.
  const SlowFastParams layer(1.0, 1e-12, 0.0);
  const auto f = fast_system(layer, SfState{2.0, 5.0});
  CHECK(f.drift.x == doctest::Approx(1.0 * 3.0).epsilon(1e-10));
  CHECK(std::fabs(f.drift.y) <= 1e-11);
}

TEST_CASE("slow-system Wong-Zakai pass") {
  const SlowFastParams sp(1.0, 0.25, 0.3);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const double u = 0.1 + 4.0 * uniform01(74, 2 * i);
    const double v = u + 4.0 * uniform01(74, 2 * i + 1);
    const Vec2 c = slow_wong_zakai(sp, SfState{u, v});
    REQUIRE(c.x == doctest::Approx(-0.5 * sp.sigma * sp.sigma * (v - u)).epsilon(1e-13));
    REQUIRE(c.y == 0.0);
    const Vec2 ito = slow_ito_drift(sp, SfState{u, v});
    const Vec2 strat = slow_system(sp, SfState{u, v}).drift;
    REQUIRE(ito.x == strat.x + c.x);
    REQUIRE(ito.y == strat.y);
  }
}

TEST_CASE("reduced flow rides the critical manifold exactly") {
  const SlowFastParams sp(1.0, 0.1, 0.0);
  {
    const SfState z = reduced_flow(sp, 2.0, 0.0);
    CHECK(z.u == 2.0);
    CHECK(z.v == 2.0);
  }
  {
    const SfState z = reduced_flow(sp, 2.0, 3.0);
    CHECK(z.u == 5.0);
    CHECK(z.v == 5.0);
  }
  for (double t : {0.25, 0.5, 2.0}) {
    const SfState z = reduced_flow(sp, 1.0, t);
    REQUIRE(z.u == 1.0 + sp.a * t);  // linear, slope a, both components
    REQUIRE(z.v == z.u);
    // The reduced problem itself: dv/dt = a - (v - u) = a on u = v.
    REQUIRE(slow_system(sp, z).drift.y == sp.a);
  }
}

TEST_CASE("distance to the critical manifold") {
  CHECK(critical_manifold_distance(SfState{3.0, 3.0}) == 0.0);
  CHECK(critical_manifold_distance(SfState{0.0, 2.0}) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(critical_manifold_distance(SfState{2.0, 0.0}) ==
        critical_manifold_distance(SfState{0.0, 2.0}));
}

TEST_CASE("nullcline formula, asymptote and drift annihilation") {
  const SlowFastParams sp(1.0, 0.25, 0.0);
  CHECK(nullcline_v(sp, 2.0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK_THROWS_AS(nullcline_v(sp, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(nullcline_v(sp, -1.0), std::invalid_argument);

  // Gap a/(eps u) drops below tol once u >= a/(eps tol).
  const double tol = 1e-6;
  for (double u : {4e6, 8e6, 4e7}) {
    REQUIRE(u >= sp.a / (sp.epsilon * tol));
    REQUIRE(nullcline_v(sp, u) - u <= tol * 1.01);
  }

  for (double u : {0.3, 1.0, 5.0}) {
    const SfState on_n{u, nullcline_v(sp, u)};
    const double scale = sp.a * (on_n.v - on_n.u) / sp.epsilon;
    REQUIRE(std::fabs(slow_system(sp, on_n).drift.x) <= 1e-9 * scale);
  }
}

TEST_CASE("layer Jacobian eigenpair makes S0 normally hyperbolic") {
  for (double a : {0.5, 1.0, 2.0}) {
    const SlowFastParams sp(a, 0.1, 0.0);
    const Mat2 dh = layer_jacobian(sp);
    // Eigenpair (-a, (1,0)) to 1e-12.
    REQUIRE(std::fabs(dh.m00 * 1.0 + dh.m01 * 0.0 - (-a) * 1.0) <= 1e-12);
    REQUIRE(std::fabs(dh.m10 * 1.0 + dh.m11 * 0.0 - (-a) * 0.0) <= 1e-12);

    // Consistency with the epsilon -> 0 fast field via central differences.
    const SlowFastParams small(a, 1e-10, 0.0);
    const SfState z{2.0, 2.0};
    const double d = 0.5;
    const double duu = (fast_system(small, {z.u + d, z.v}).drift.x -
                        fast_system(small, {z.u - d, z.v}).drift.x) /
                       (2 * d);
    const double duv = (fast_system(small, {z.u, z.v + d}).drift.x -
                        fast_system(small, {z.u, z.v - d}).drift.x) /
                       (2 * d);
    REQUIRE(duu == doctest::Approx(dh.m00).epsilon(1e-8));
    REQUIRE(duv == doctest::Approx(dh.m01).epsilon(1e-8));
  }
}

TEST_CASE("regime classification") {
  const SlowFastParams sp(1.0, 1.0 / 3.0, 0.1);
  CHECK(classify_regime(sp, SfState{3.0, 3.0}) == Regime::I);
  // On the nullcline, far from S0.
  const double u = 0.5;
  CHECK(classify_regime(sp, SfState{u, nullcline_v(sp, u)}) == Regime::III);
  // Well above the nullcline: negative u-drift, the fast sweep.
  CHECK(classify_regime(sp, SfState{0.5, 8.0}) == Regime::II);
  // Between the bands, below the nullcline: positive u-drift.
  CHECK(classify_regime(sp, SfState{1.0, 2.5}) == Regime::IV);

  // Total and single-valued over fuzzed points.
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const double uu = 10.0 * uniform01(75, 2 * i);
    const double vv = uu + 10.0 * uniform01(75, 2 * i + 1);
    const Regime r = classify_regime(sp, SfState{uu, vv});
    REQUIRE(static_cast<int>(r) >= 1);
    REQUIRE(static_cast<int>(r) <= 4);
  }
}

TEST_CASE("hitting time of the nullcline") {
  const SlowFastParams sp(1.0, 0.25, 0.0);

  // Starting on N: immediate hit.
  {
    SfTrajectory traj;
    traj.h = 1e-3;
    traj.times = {0.0, 1e-3};
    traj.states = {{2.0, nullcline_v(sp, 2.0)}, {2.0, nullcline_v(sp, 2.0) - 1.0}};
    const auto tau = hitting_time_nullcline(sp, traj);
    REQUIRE(tau.has_value());
    CHECK(*tau == 0.0);
  }

  // Strictly below N throughout: absent.
  {
    SfTrajectory traj;
    traj.h = 1e-3;
    for (int i = 0; i < 10; ++i) {
      traj.times.push_back(1e-3 * i);
      traj.states.push_back({2.0 + 0.01 * i, 2.1 + 0.01 * i});
    }
    CHECK_FALSE(hitting_time_nullcline(sp, traj).has_value());
  }

  // Deterministic run from near S0 crosses N at a finite time; the dense run
  // pins the crossing the coarse interpolation must reproduce.
  {
    const SfState start{2.0, 2.05};
    const auto coarse = integrate_slow(sp, start, NoisePath::zeros(1e-3, 40000), 40.0);
    const auto dense = integrate_slow(sp, start, NoisePath::zeros(1e-4, 400000), 40.0);
    const auto tau_c = hitting_time_nullcline(sp, coarse);
    const auto tau_d = hitting_time_nullcline(sp, dense);
    REQUIRE(tau_c.has_value());
    REQUIRE(tau_d.has_value());
    CHECK(std::fabs(*tau_c - *tau_d) < 0.05);
  }
}

TEST_CASE("slow integration respects the transported floor and reproduces bitwise") {
  const SlowFastParams sp(1.0, 0.25, 0.2);
  const auto path = NoisePath::generate(41, 1e-3, 20000);
  const auto t1 = integrate_slow(sp, {2.0, 2.0}, path, 20.0);
  const auto t2 = integrate_slow(sp, {2.0, 2.0}, path, 20.0);
  REQUIRE(t1.states.size() == t2.states.size());
  for (std::size_t i = 0; i < t1.states.size(); ++i) {
    REQUIRE(t1.states[i].u == t2.states[i].u);
    REQUIRE(t1.states[i].v == t2.states[i].v);
    REQUIRE(t1.states[i].u >= 0.0);
    REQUIRE(t1.states[i].v >= t1.states[i].u);
  }
}

TEST_CASE("transform consistency: commutation at equal steps is roundoff-level") {
  // The change of coordinates is linear, so Euler-Maruyama commutes with it
  // exactly in exact arithmetic; at equal resolution only rounding survives.
  const Params p(1.0, 3.0, 0.1);
  const auto path = NoisePath::generate(55, 1e-3, 10000);
  const double disc = transform_consistency_check(p, {1.0, 1.5}, path, 10.0, 1e-3);
  CHECK(disc <= 1e-9);
}

TEST_CASE("transform consistency: identity-transform self-check is exactly zero") {
  // Same harness shape with the identity map in place of the coordinate
  // change: both routes are the same arithmetic, so the gap is exactly 0.
  const Params p(1.0, 3.0, 0.1);
  const auto path = NoisePath::generate(56, 1e-3, 1000);
  State a{1.0, 1.5}, b{1.0, 1.5};
  double worst = 0.0;
  for (std::size_t n = 0; n < 1000; ++n) {
    a = em_step(p, a, path.increment(n), 1e-3);
    b = em_step(p, b, path.increment(n), 1e-3);
    worst = std::max(worst, std::hypot(a.x - b.x, a.y - b.y));
  }
  CHECK(worst == 0.0);
}

TEST_CASE("transform consistency: deterministic refinement ratio") {
  const Params p(1.0, 3.0, 0.0);
  const auto path = NoisePath::zeros(1.25e-4, 80000);  // t_end 10 at the fine step
  const double d1 = transform_consistency_check(p, {1.0, 1.5}, path, 10.0, 1e-3);
  const double d2 = transform_consistency_check(p, {1.0, 1.5}, path, 10.0, 5e-4);
  CHECK(d1 / d2 >= 1.8);
}

TEST_CASE("transform consistency: stochastic discrepancy shrinks with h") {
  std::size_t improved = 0;
  for (std::uint64_t k = 0; k < 3; ++k) {
    const auto path = NoisePath::generate(sub_seed(600, k), 1.25e-4, 80000);
    const Params p(1.0, 3.0, 0.1);
    const double d1 = transform_consistency_check(p, {1.0, 1.5}, path, 10.0, 1e-3);
    const double d2 = transform_consistency_check(p, {1.0, 1.5}, path, 10.0, 5e-4);
    if (d2 < d1) ++improved;
  }
  CHECK(improved >= 2);
}

TEST_CASE("transform consistency argument checks") {
  const Params p(1.0, 3.0, 0.1);
  const auto path = NoisePath::generate(57, 1e-3, 100);
  CHECK_THROWS_AS(transform_consistency_check(p, {1, 1}, path, 0.05, 3.3e-4),
                  std::invalid_argument);  // step does not divide h
  CHECK_THROWS_AS(transform_consistency_check(p, {1, 1}, path, 10.0, 1e-3),
                  std::invalid_argument);  // path too short
}
