// Command-line front end: every experiment is a subcommand with an explicit
// seed, plain-CSV outputs and a key=value metadata sidecar next to each
// output file. Exit codes: 0 success, 2 flag/validation error, 3 numerical
// blow-up.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bruss/ftle.hpp"
#include "bruss/integrator.hpp"
#include "bruss/io.hpp"
#include "bruss/model.hpp"
#include "bruss/noise.hpp"
#include "bruss/slowfast.hpp"
#include "bruss/ssa.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using KV = std::vector<std::pair<std::string, std::string>>;

// Relative --out paths land under $BRUSS_OUT_DIR when it is set.
std::string resolve_out(const std::string& out) {
  if (out.empty() || out.front() == '/') return out;
  const char* dir = std::getenv("BRUSS_OUT_DIR");
  if (dir == nullptr || *dir == '\0') return out;
  std::string d(dir);
  if (d.back() != '/') d += '/';
  return d + out;
}

void add_run_header(KV& kv, const std::string& subcommand) {
  kv.emplace_back("tool", "bruss");
  kv.emplace_back("version", kVersion);
  kv.emplace_back("subcommand", subcommand);
}

void add_flag(KV& kv, const std::string& name, double v) {
  kv.emplace_back("flag." + name, bruss::format_double(v));
}
void add_flag(KV& kv, const std::string& name, const std::string& v) {
  kv.emplace_back("flag." + name, v);
}
void add_flag(KV& kv, const std::string& name, std::uint64_t v) {
  kv.emplace_back("flag." + name, std::to_string(v));
}
void add_flag(KV& kv, const std::string& name, std::int64_t v) {
  kv.emplace_back("flag." + name, std::to_string(v));
}
void add_derived(KV& kv, const std::string& name, const std::string& v) {
  kv.emplace_back("derived." + name, v);
}
void add_derived(KV& kv, const std::string& name, double v) {
  kv.emplace_back("derived." + name, bruss::format_double(v));
}

struct SdeOpts {
  double a = 1.0, b = 3.0, sigma = 0.1;
  double x0 = 1.0, y0 = 1.0;
  double h = 1e-3, t_end = 150.0;
  std::uint64_t seed = 42;
  std::uint64_t stride = 1;
  std::string out;
};

void add_sde_flags(CLI::App* cmd, SdeOpts& o, bool with_ic = true) {
  cmd->add_option("--a", o.a, "inflow concentration a > 0")->capture_default_str();
  cmd->add_option("--b", o.b, "bifurcation parameter b > 0")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "noise intensity sigma >= 0")->capture_default_str();
  if (with_ic) {
    cmd->add_option("--x0", o.x0, "initial x")->capture_default_str();
    cmd->add_option("--y0", o.y0, "initial y")->capture_default_str();
  }
  cmd->add_option("--h", o.h, "step size (time units)")->capture_default_str();
  cmd->add_option("--t-end", o.t_end, "end time (time units)")->capture_default_str();
  cmd->add_option("--seed", o.seed, "noise seed")->capture_default_str();
  cmd->add_option("--stride", o.stride, "record every k-th step")->capture_default_str();
  cmd->add_option("--out", o.out, "output CSV path")->required();
}

void add_common_meta(KV& kv, const SdeOpts& o, bool with_ic = true) {
  add_flag(kv, "a", o.a);
  add_flag(kv, "b", o.b);
  add_flag(kv, "sigma", o.sigma);
  if (with_ic) {
    add_flag(kv, "x0", o.x0);
    add_flag(kv, "y0", o.y0);
  }
  add_flag(kv, "h", o.h);
  add_flag(kv, "t-end", o.t_end);
  add_flag(kv, "seed", o.seed);
  add_flag(kv, "stride", o.stride);
  add_flag(kv, "out", o.out);
}

std::size_t path_steps(double t_end, double h) {
  if (!(h > 0.0) || !(t_end > 0.0))
    throw std::invalid_argument("h and t-end must be positive");
  return static_cast<std::size_t>(std::llround(t_end / h));
}

// ---------------------------------------------------------------------------

int run_simulate(const SdeOpts& o) {
  const bruss::Params p(o.a, o.b, o.sigma);
  const auto path = bruss::NoisePath::generate(o.seed, o.h, path_steps(o.t_end, o.h));
  const auto traj =
      bruss::integrate(p, {o.x0, o.y0}, path, o.t_end, static_cast<std::size_t>(o.stride));
  bruss::write_trajectory_csv(o.out, traj);

  KV kv;
  add_run_header(kv, "simulate");
  add_common_meta(kv, o);
  add_derived(kv, "b_crit", bruss::hopf_threshold(o.a));
  add_derived(kv, "clamp_count", std::to_string(traj.clamp_count));
  bruss::write_metadata(o.out + ".meta", kv);
  return 0;
}

int run_two_point(const SdeOpts& o, double x1, double y1) {
  const bruss::Params p(o.a, o.b, o.sigma);
  const auto path = bruss::NoisePath::generate(o.seed, o.h, path_steps(o.t_end, o.h));
  const auto res = bruss::two_point(p, {o.x0, o.y0}, {x1, y1}, path, o.t_end,
                                    static_cast<std::size_t>(o.stride));
  bruss::write_two_point_csv(o.out, res);

  KV kv;
  add_run_header(kv, "two-point");
  add_common_meta(kv, o);
  add_flag(kv, "x1", x1);
  add_flag(kv, "y1", y1);
  add_derived(kv, "b_crit", bruss::hopf_threshold(o.a));
  add_derived(kv, "clamp_count",
              std::to_string(res.first.clamp_count + res.second.clamp_count));
  bruss::write_metadata(o.out + ".meta", kv);
  return 0;
}

struct FieldOpts {
  SdeOpts sde;
  std::string T = "auto";
  double x_min = 0.05, x_max = 4.0, y_min = 0.05, y_max = 6.0;
  std::uint64_t nx = 100, ny = 100;
  unsigned threads = 1;
  double prerun = 200.0;
};

int run_ftle_field(const FieldOpts& f) {
  const bruss::Params p(f.sde.a, f.sde.b, f.sde.sigma);

  double T = 0.0;
  double omega = 0.0;
  if (f.T == "auto") {
    T = bruss::auto_horizon(p, {f.sde.x0, f.sde.y0}, f.prerun, f.sde.h);
    omega = 1.0 / (2.0 * T);
  } else {
    T = std::stod(f.T);
  }
  if (!(T > 0.0)) throw std::invalid_argument("ftle-field: horizon T must be positive");

  const auto path =
      bruss::NoisePath::generate(f.sde.seed, f.sde.h, path_steps(T, f.sde.h) + 1);
  const bruss::GridSpec grid{f.x_min, f.x_max, f.y_min, f.y_max,
                             static_cast<std::size_t>(f.nx),
                             static_cast<std::size_t>(f.ny)};
  const auto field = bruss::ftle_field(p, grid, path, T, f.threads);
  bruss::write_ftle_field_csv(f.sde.out, field);

  KV kv;
  add_run_header(kv, "ftle-field");
  add_flag(kv, "a", f.sde.a);
  add_flag(kv, "b", f.sde.b);
  add_flag(kv, "sigma", f.sde.sigma);
  add_flag(kv, "x0", f.sde.x0);
  add_flag(kv, "y0", f.sde.y0);
  add_flag(kv, "h", f.sde.h);
  add_flag(kv, "seed", f.sde.seed);
  add_flag(kv, "T", f.T);
  add_flag(kv, "x-min", f.x_min);
  add_flag(kv, "x-max", f.x_max);
  add_flag(kv, "y-min", f.y_min);
  add_flag(kv, "y-max", f.y_max);
  add_flag(kv, "nx", f.nx);
  add_flag(kv, "ny", f.ny);
  add_flag(kv, "prerun", f.prerun);
  add_flag(kv, "out", f.sde.out);
  add_derived(kv, "T_resolved", field.T);
  if (f.T == "auto") add_derived(kv, "omega", omega);
  add_derived(kv, "positive_fraction", field.positive_fraction());
  bruss::write_metadata(f.sde.out + ".meta", kv);
  return 0;
}

struct SeriesOpts {
  SdeOpts sde;
  double t_max = 150.0, t_step = 0.5;
};

int run_ftle_series(const SeriesOpts& s) {
  const bruss::Params p(s.sde.a, s.sde.b, s.sde.sigma);
  if (!(s.t_step >= s.sde.h))
    throw std::invalid_argument("ftle-series: t-step must be >= h");
  std::vector<double> horizons;
  const auto n = static_cast<std::size_t>(std::floor(s.t_max / s.t_step + 1e-9));
  for (std::size_t k = 1; k <= n; ++k)
    horizons.push_back(static_cast<double>(k) * s.t_step);
  if (horizons.empty()) throw std::invalid_argument("ftle-series: empty horizon grid");

  const auto path = bruss::NoisePath::generate(
      s.sde.seed, s.sde.h, path_steps(horizons.back(), s.sde.h) + 1);
  const auto series = bruss::ftle_series(p, {s.sde.x0, s.sde.y0}, path, horizons);
  bruss::write_series_csv(s.sde.out, "T,ftle", series);

  KV kv;
  add_run_header(kv, "ftle-series");
  add_flag(kv, "a", s.sde.a);
  add_flag(kv, "b", s.sde.b);
  add_flag(kv, "sigma", s.sde.sigma);
  add_flag(kv, "x0", s.sde.x0);
  add_flag(kv, "y0", s.sde.y0);
  add_flag(kv, "h", s.sde.h);
  add_flag(kv, "seed", s.sde.seed);
  add_flag(kv, "t-max", s.t_max);
  add_flag(kv, "t-step", s.t_step);
  add_flag(kv, "out", s.sde.out);
  bruss::write_metadata(s.sde.out + ".meta", kv);
  return 0;
}

struct PeriodOpts {
  double a = 1.0, b = 4.0;
  double x0 = 1.0, y0 = 1.0;
  double h = 1e-3, duration = 200.0;
  std::string out;
};

int run_period(const PeriodOpts& o) {
  const bruss::Params p(o.a, o.b, 0.0);
  const double T = bruss::auto_horizon(p, {o.x0, o.y0}, o.duration, o.h);
  const double omega = 1.0 / (2.0 * T);
  const std::string line = "omega=" + bruss::format_double(omega) +
                           " period=" + bruss::format_double(1.0 / omega) +
                           " T_half=" + bruss::format_double(T);
  std::cout << line << "\n";
  std::ofstream os(o.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + o.out);
  os << line << "\n";

  KV kv;
  add_run_header(kv, "period");
  add_flag(kv, "a", o.a);
  add_flag(kv, "b", o.b);
  add_flag(kv, "x0", o.x0);
  add_flag(kv, "y0", o.y0);
  add_flag(kv, "h", o.h);
  add_flag(kv, "duration", o.duration);
  add_flag(kv, "out", o.out);
  add_derived(kv, "omega", omega);
  add_derived(kv, "T_half", T);
  bruss::write_metadata(o.out + ".meta", kv);
  return 0;
}

struct SlowFastOpts {
  double a = 1.0, sigma = 0.1;
  double b = 0.0, epsilon = 0.0;  // mutually exclusive; 0 = unset
  double u0 = 2.0, v0 = 2.0;
  double h = 1e-3, t_end = 150.0;
  std::uint64_t seed = 42, stride = 1;
  double delta_s = 0.1, delta_n = 0.1;
  bool geometry = false;
  double geom_u_min = 0.05, geom_u_max = 10.0;
  std::string out;
};

int run_slowfast(const SlowFastOpts& o, bool b_given, bool eps_given) {
  double epsilon;
  if (b_given && eps_given)
    throw std::invalid_argument("slowfast: --b and --epsilon are mutually exclusive");
  if (eps_given)
    epsilon = o.epsilon;
  else
    epsilon = o.a / (b_given ? o.b : 3.0);
  const bruss::SlowFastParams sp(o.a, epsilon, o.sigma);

  const auto path = bruss::NoisePath::generate(o.seed, o.h, path_steps(o.t_end, o.h));
  const auto traj = bruss::integrate_slow(sp, {o.u0, o.v0}, path, o.t_end,
                                          static_cast<std::size_t>(o.stride));
  const bruss::RegimeThresholds th{o.delta_s, o.delta_n};
  bruss::write_slowfast_csv(o.out, traj, sp, th);

  if (o.geometry) {
    std::vector<std::pair<double, double>> nullcline, critical;
    const std::size_t n_pts = 400;
    for (std::size_t i = 0; i < n_pts; ++i) {
      const double u = o.geom_u_min + (o.geom_u_max - o.geom_u_min) *
                                          static_cast<double>(i) /
                                          static_cast<double>(n_pts - 1);
      nullcline.emplace_back(u, bruss::nullcline_v(sp, u));
      critical.emplace_back(u, u);
    }
    bruss::write_polyline_csv(o.out + ".nullcline.csv", "u,v", nullcline);
    bruss::write_polyline_csv(o.out + ".critical.csv", "u,v", critical);
  }

  KV kv;
  add_run_header(kv, "slowfast");
  add_flag(kv, "a", o.a);
  if (eps_given)
    add_flag(kv, "epsilon", o.epsilon);
  else
    add_flag(kv, "b", b_given ? o.b : 3.0);
  add_flag(kv, "sigma", o.sigma);
  add_flag(kv, "u0", o.u0);
  add_flag(kv, "v0", o.v0);
  add_flag(kv, "h", o.h);
  add_flag(kv, "t-end", o.t_end);
  add_flag(kv, "seed", o.seed);
  add_flag(kv, "stride", o.stride);
  add_flag(kv, "delta-s", o.delta_s);
  add_flag(kv, "delta-n", o.delta_n);
  kv.emplace_back("flag.geometry", o.geometry ? "1" : "0");
  add_flag(kv, "geom-u-min", o.geom_u_min);
  add_flag(kv, "geom-u-max", o.geom_u_max);
  add_flag(kv, "out", o.out);
  add_derived(kv, "epsilon_resolved", sp.epsilon);
  add_derived(kv, "b_resolved", sp.a / sp.epsilon);
  add_derived(kv, "clamp_count", std::to_string(traj.clamp_count));
  bruss::write_metadata(o.out + ".meta", kv);
  return 0;
}

struct SsaOpts {
  double gamma1 = 1.0, gamma2 = 1.0, gamma3 = 1.0, gamma4 = 1.0;
  std::int64_t A = 0, B = 0;  // 0 = default to V
  double V = 1000.0;
  std::int64_t X0 = -1, Y0 = -1;  // -1 = default to V
  double t_end = 50.0;
  std::uint64_t seed = 42;
  std::uint64_t cap = 100000000ULL;
  double resample = 0.0;  // 0 = off
  std::string out;
};

int run_ssa(const SsaOpts& o) {
  const auto v_count = static_cast<std::int64_t>(std::llround(o.V));
  bruss::RateConstants rc;
  rc.gamma1 = o.gamma1;
  rc.gamma2 = o.gamma2;
  rc.gamma3 = o.gamma3;
  rc.gamma4 = o.gamma4;
  rc.A = o.A > 0 ? o.A : v_count;
  rc.B = o.B > 0 ? o.B : v_count;
  rc.V = o.V;
  rc.validate();

  bruss::JumpState z0;
  z0.X = o.X0 >= 0 ? o.X0 : v_count;
  z0.Y = o.Y0 >= 0 ? o.Y0 : v_count;

  const auto jump = bruss::simulate_jump(rc, z0, o.t_end, o.seed, o.cap);
  bruss::write_jump_csv(o.out, jump);

  if (o.resample > 0.0) {
    bruss::JumpPath grid;
    std::size_t idx = 0;
    const auto n = static_cast<std::size_t>(std::floor(o.t_end / o.resample));
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = static_cast<double>(k) * o.resample;
      while (idx + 1 < jump.times.size() && jump.times[idx + 1] <= t) ++idx;
      grid.times.push_back(t);
      grid.states.push_back(jump.states[idx]);
      grid.reactions.push_back(-1);
    }
    bruss::write_jump_csv(o.out + ".grid.csv", grid);
  }

  KV kv;
  add_run_header(kv, "ssa");
  add_flag(kv, "gamma1", o.gamma1);
  add_flag(kv, "gamma2", o.gamma2);
  add_flag(kv, "gamma3", o.gamma3);
  add_flag(kv, "gamma4", o.gamma4);
  add_flag(kv, "A", rc.A);
  add_flag(kv, "B", rc.B);
  add_flag(kv, "V", o.V);
  add_flag(kv, "X0", z0.X);
  add_flag(kv, "Y0", z0.Y);
  add_flag(kv, "t-end", o.t_end);
  add_flag(kv, "seed", o.seed);
  add_flag(kv, "cap", o.cap);
  add_flag(kv, "resample", o.resample);
  add_flag(kv, "out", o.out);
  add_derived(kv, "matched_a", rc.matched_a());
  add_derived(kv, "matched_b", rc.matched_b());
  add_derived(kv, "events", std::to_string(jump.times.size() - 1));
  bruss::write_metadata(o.out + ".meta", kv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic Brusselator simulation toolkit"};
  app.set_version_flag("--version", kVersion);
  // --h is the step-size flag, so help lives on --help only.
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);

  auto add_cmd = [&](const std::string& name, const std::string& desc) {
    auto* c = app.add_subcommand(name, desc);
    c->set_help_flag("--help", "print this help and exit");
    return c;
  };

  // simulate
  SdeOpts sim;
  auto* c_sim = add_cmd("simulate", "integrate one trajectory");
  add_sde_flags(c_sim, sim);

  // two-point
  SdeOpts tp;
  double tp_x1 = 1.1, tp_y1 = 1.1;
  auto* c_tp = add_cmd("two-point",
                       "two trajectories under one noise realization");
  add_sde_flags(c_tp, tp);
  c_tp->add_option("--x1", tp_x1, "second initial x")->capture_default_str();
  c_tp->add_option("--y1", tp_y1, "second initial y")->capture_default_str();

  // ftle-field
  FieldOpts field;
  auto* c_field = add_cmd("ftle-field", "FTLE landscape over a grid");
  c_field->add_option("--a", field.sde.a, "inflow concentration a > 0")->capture_default_str();
  c_field->add_option("--b", field.sde.b, "bifurcation parameter b > 0")->capture_default_str();
  c_field->add_option("--sigma", field.sde.sigma, "noise intensity sigma >= 0")->capture_default_str();
  c_field->add_option("--x0", field.sde.x0, "pre-run initial x (for --T auto)")
      ->capture_default_str();
  c_field->add_option("--y0", field.sde.y0, "pre-run initial y (for --T auto)")
      ->capture_default_str();
  c_field->add_option("--h", field.sde.h, "step size (time units)")->capture_default_str();
  c_field->add_option("--seed", field.sde.seed, "noise seed (one realization for all cells)")->capture_default_str();
  c_field->add_option("--T", field.T, "horizon, number or 'auto' = 1/(2 Omega)")
      ->capture_default_str();
  c_field->add_option("--x-min", field.x_min, "grid window (concentration units)")->capture_default_str();
  c_field->add_option("--x-max", field.x_max, "grid window (concentration units)")->capture_default_str();
  c_field->add_option("--y-min", field.y_min, "grid window (concentration units)")->capture_default_str();
  c_field->add_option("--y-max", field.y_max, "grid window (concentration units)")->capture_default_str();
  c_field->add_option("--nx", field.nx, "grid cells in x")->capture_default_str();
  c_field->add_option("--ny", field.ny, "grid cells in y")->capture_default_str();
  c_field->add_option("--threads", field.threads, "worker count (results identical)")
      ->capture_default_str();
  c_field->add_option("--prerun", field.prerun, "pre-run duration for --T auto")
      ->capture_default_str();
  c_field->add_option("--out", field.sde.out, "output CSV path")->required();

  // ftle-series
  SeriesOpts series;
  auto* c_series = add_cmd("ftle-series", "FTLE as a function of T");
  c_series->add_option("--a", series.sde.a, "inflow concentration a > 0")->capture_default_str();
  c_series->add_option("--b", series.sde.b, "bifurcation parameter b > 0")->capture_default_str();
  c_series->add_option("--sigma", series.sde.sigma, "noise intensity sigma >= 0")->capture_default_str();
  c_series->add_option("--x0", series.sde.x0, "initial x")->capture_default_str();
  c_series->add_option("--y0", series.sde.y0, "initial y")->capture_default_str();
  c_series->add_option("--h", series.sde.h, "step size (time units)")->capture_default_str();
  c_series->add_option("--seed", series.sde.seed, "noise seed")->capture_default_str();
  c_series->add_option("--t-max", series.t_max, "largest horizon T (time units)")->capture_default_str();
  c_series->add_option("--t-step", series.t_step, "horizon spacing (time units, >= h)")->capture_default_str();
  c_series->add_option("--out", series.sde.out, "output CSV path")->required();

  // period
  PeriodOpts period;
  auto* c_period = add_cmd("period",
                                      "dominant frequency of a deterministic run");
  c_period->add_option("--a", period.a, "inflow concentration a > 0")->capture_default_str();
  c_period->add_option("--b", period.b, "bifurcation parameter b > 0")->capture_default_str();
  c_period->add_option("--x0", period.x0, "initial x")->capture_default_str();
  c_period->add_option("--y0", period.y0, "initial y")->capture_default_str();
  c_period->add_option("--h", period.h, "step size (time units)")->capture_default_str();
  c_period->add_option("--duration", period.duration, "run length fed to the FFT (time units)")->capture_default_str();
  c_period->add_option("--out", period.out, "report file path")->required();

  // slowfast
  SlowFastOpts sf;
  auto* c_sf = add_cmd("slowfast",
                                  "trajectory in slow-fast coordinates with regimes");
  c_sf->add_option("--a", sf.a, "inflow concentration a > 0")->capture_default_str();
  auto* opt_b = c_sf->add_option("--b", sf.b, "bifurcation parameter (epsilon = a/b)");
  auto* opt_eps = c_sf->add_option("--epsilon", sf.epsilon, "time-scale ratio");
  opt_b->excludes(opt_eps);
  c_sf->add_option("--sigma", sf.sigma, "noise intensity sigma >= 0")->capture_default_str();
  c_sf->add_option("--u0", sf.u0, "initial u (transformed coordinates)")->capture_default_str();
  c_sf->add_option("--v0", sf.v0, "initial v (transformed coordinates, v >= u)")->capture_default_str();
  c_sf->add_option("--h", sf.h, "step size (slow time units)")->capture_default_str();
  c_sf->add_option("--t-end", sf.t_end, "end time (slow time units)")->capture_default_str();
  c_sf->add_option("--seed", sf.seed, "noise seed")->capture_default_str();
  c_sf->add_option("--stride", sf.stride, "record every k-th step")->capture_default_str();
  c_sf->add_option("--delta-s", sf.delta_s, "regime band around S0")->capture_default_str();
  c_sf->add_option("--delta-n", sf.delta_n, "regime band around the nullcline")
      ->capture_default_str();
  c_sf->add_flag("--geometry", sf.geometry, "also write nullcline/critical polylines");
  c_sf->add_option("--geom-u-min", sf.geom_u_min, "geometry sampling range in u")->capture_default_str();
  c_sf->add_option("--geom-u-max", sf.geom_u_max, "geometry sampling range in u")->capture_default_str();
  c_sf->add_option("--out", sf.out, "output CSV path")->required();

  // ssa
  SsaOpts ssa;
  auto* c_ssa = add_cmd("ssa", "Gillespie direct-method jump process");
  c_ssa->add_option("--gamma1", ssa.gamma1, "rate constant of A -> X")->capture_default_str();
  c_ssa->add_option("--gamma2", ssa.gamma2, "rate constant of B+X -> Y+D")->capture_default_str();
  c_ssa->add_option("--gamma3", ssa.gamma3, "rate constant of 2X+Y -> 3X")->capture_default_str();
  c_ssa->add_option("--gamma4", ssa.gamma4, "rate constant of X -> E")->capture_default_str();
  c_ssa->add_option("--A", ssa.A, "pool count A (default: V)");
  c_ssa->add_option("--B", ssa.B, "pool count B (default: V)");
  c_ssa->add_option("--V", ssa.V, "system volume")->capture_default_str();
  c_ssa->add_option("--X0", ssa.X0, "initial X count (default: V)");
  c_ssa->add_option("--Y0", ssa.Y0, "initial Y count (default: V)");
  c_ssa->add_option("--t-end", ssa.t_end, "end time (time units)")->capture_default_str();
  c_ssa->add_option("--seed", ssa.seed, "stream seed")->capture_default_str();
  c_ssa->add_option("--cap", ssa.cap, "event-count cap")->capture_default_str();
  c_ssa->add_option("--resample", ssa.resample,
                    "also write a uniform-grid resampling at this dt");
  c_ssa->add_option("--out", ssa.out, "event CSV path")->required();

  try {
    app.parse(argc, argv);
    if (c_sim->parsed()) {
      sim.out = resolve_out(sim.out);
      return run_simulate(sim);
    }
    if (c_tp->parsed()) {
      tp.out = resolve_out(tp.out);
      return run_two_point(tp, tp_x1, tp_y1);
    }
    if (c_field->parsed()) {
      field.sde.out = resolve_out(field.sde.out);
      return run_ftle_field(field);
    }
    if (c_series->parsed()) {
      series.sde.out = resolve_out(series.sde.out);
      return run_ftle_series(series);
    }
    if (c_period->parsed()) {
      period.out = resolve_out(period.out);
      return run_period(period);
    }
    if (c_sf->parsed()) {
      sf.out = resolve_out(sf.out);
      return run_slowfast(sf, opt_b->count() > 0, opt_eps->count() > 0);
    }
    if (c_ssa->parsed()) {
      ssa.out = resolve_out(ssa.out);
      return run_ssa(ssa);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const bruss::BlowupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
