#include "bruss/ftle.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace bruss {

double spectral_norm_2x2(const Mat2& m) {
  const double f = m.m00 * m.m00 + m.m01 * m.m01 + m.m10 * m.m10 + m.m11 * m.m11;
  const double d = m.det();
  const double disc = std::max(f * f - 4.0 * d * d, 0.0);
  return std::sqrt(0.5 * (f + std::sqrt(disc)));
}

double FtleField::positive_fraction() const {
  std::size_t finite = 0, positive = 0;
  for (double v : values) {
    if (std::isnan(v)) continue;
    ++finite;
    if (v > 0.0) ++positive;
  }
  return finite == 0 ? 0.0 : static_cast<double>(positive) / static_cast<double>(finite);
}

namespace {

std::size_t horizon_steps(const NoisePath& path, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("ftle: T must be positive");
  const auto n = static_cast<std::size_t>(std::llround(T / path.h()));
  if (n == 0) throw std::invalid_argument("ftle: T shorter than one step");
  if (n > path.length())
    throw std::invalid_argument("ftle: T exceeds the noise path duration");
  return n;
}

// Shared co-integration loop. Checkpoints are strictly increasing step
// counts; lambda is emitted after the checkpointed step.
std::vector<std::pair<double, double>> co_integrate(
    const Params& p, State s0, const NoisePath& path,
    std::span<const std::size_t> checkpoints, const FtleOptions& opts) {
  const double h = path.h();
  std::vector<std::pair<double, double>> out;
  out.reserve(checkpoints.size());

  State s = s0;
  Mat2 phi = Mat2::identity();
  double log_scale = 0.0;
  std::size_t clamp_count = 0;
  std::size_t next = 0;

  const std::size_t n_steps = checkpoints.empty() ? 0 : checkpoints.back();
  for (std::size_t n = 0; n < n_steps; ++n) {
    const double dW = path.increment(n);

    // Tangent update first: both use the state at the start of the step, so
    // the discrete Phi is exactly the Jacobian of the discrete flow map.
    const Mat2 a = variational_drift(p, s, phi);
    const Mat2 g = variational_diffusion(p, phi);
    phi = phi + h * a + dW * g;

    {
      const Vec2 f = ito_drift(p, s);
      const Vec2 gs = diffusion(p, s);
      State ns{s.x + h * f.x + gs.x * dW, s.y + h * f.y + gs.y * dW};
      if (!std::isfinite(ns.x) || !std::isfinite(ns.y) ||
          std::fabs(ns.x) > opts.limits.blowup ||
          std::fabs(ns.y) > opts.limits.blowup)
        throw BlowupError(n, ns);
      if (ns.x < opts.limits.floor) { ns.x = opts.limits.floor; ++clamp_count; }
      if (ns.y < opts.limits.floor) { ns.y = opts.limits.floor; ++clamp_count; }
      s = ns;
    }

    const double nrm = spectral_norm_2x2(phi);
    if (!std::isfinite(nrm) || nrm == 0.0)
      throw BlowupError(n, s);
    if (nrm < opts.renorm_lo || nrm > opts.renorm_hi) {
      phi = (1.0 / nrm) * phi;
      log_scale += std::log(nrm);
    }

    if (next < checkpoints.size() && n + 1 == checkpoints[next]) {
      const double t = static_cast<double>(n + 1) * h;
      out.emplace_back(t, (log_scale + std::log(spectral_norm_2x2(phi))) / t);
      ++next;
    }
  }
  return out;
}

}  // namespace

double ftle(const Params& p, State s0, const NoisePath& path, double T,
            const FtleOptions& opts) {
  const std::size_t n = horizon_steps(path, T);
  const std::size_t cp[1] = {n};
  return co_integrate(p, s0, path, cp, opts).front().second;
}

std::vector<std::pair<double, double>> ftle_series(const Params& p, State s0,
                                                   const NoisePath& path,
                                                   std::span<const double> horizons,
                                                   const FtleOptions& opts) {
  if (horizons.empty())
    throw std::invalid_argument("ftle_series: no horizons requested");
  std::vector<std::size_t> cps;
  cps.reserve(horizons.size());
  for (double T : horizons) {
    const std::size_t n = horizon_steps(path, T);
    if (!cps.empty() && n <= cps.back())
      throw std::invalid_argument("ftle_series: horizons must be increasing");
    cps.push_back(n);
  }
  return co_integrate(p, s0, path, cps, opts);
}

FtleField ftle_field(const Params& p, const GridSpec& grid, const NoisePath& path,
                     double T, unsigned threads, const FtleOptions& opts) {
  if (grid.nx == 0 || grid.ny == 0)
    throw std::invalid_argument("ftle_field: empty grid");
  if (!(grid.x0 > 0.0) || !(grid.y0 > 0.0))
    throw std::invalid_argument("ftle_field: grid must lie in the open positive quadrant");

  const std::size_t n_steps = horizon_steps(path, T);

  FtleField field;
  field.grid = grid;
  field.T = static_cast<double>(n_steps) * path.h();
  field.seed = path.seed();
  field.h = path.h();
  field.values.assign(grid.nx * grid.ny, 0.0);

  const unsigned n_workers = std::max(1u, threads);
  const std::size_t cp[1] = {n_steps};

  auto run_rows = [&](unsigned worker) {
    for (std::size_t iy = worker; iy < grid.ny; iy += n_workers) {
      for (std::size_t ix = 0; ix < grid.nx; ++ix) {
        const State s0{grid.x_at(ix), grid.y_at(iy)};
        double value;
        try {
          value = co_integrate(p, s0, path, cp, opts).front().second;
        } catch (const BlowupError&) {
          value = std::numeric_limits<double>::quiet_NaN();
        }
        field.values[iy * grid.nx + ix] = value;
      }
    }
  };

  if (n_workers == 1) {
    run_rows(0);
    return field;
  }

  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        run_rows(w);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return field;
}

namespace detail {

void fft_pow2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_pow2: size must be a power of two");

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

// Bluestein's chirp-z transform: expresses an arbitrary-length DFT through
// power-of-two FFTs of a chirped sequence. Angles use n^2 mod 2N to stay
// well inside double range.
std::vector<std::complex<double>> dft_real(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n == 0) throw std::invalid_argument("dft_real: empty series");
  if ((n & (n - 1)) == 0) {
    std::vector<std::complex<double>> a(x.begin(), x.end());
    fft_pow2(a, false);
    return a;
  }

  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t r = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    const double ang = -std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    chirp[k] = {std::cos(ang), std::sin(ang)};
  }

  std::vector<std::complex<double>> a(m, {0.0, 0.0});
  std::vector<std::complex<double>> b(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k)
    b[k] = b[m - k] = std::conj(chirp[k]);

  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a, true);
  const double inv_m = 1.0 / static_cast<double>(m);

  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * inv_m * chirp[k];
  return out;
}

}  // namespace detail

double dominant_frequency(std::span<const double> series, double h) {
  if (series.size() < 256)
    throw std::invalid_argument("dominant_frequency: need at least 256 samples");
  if (!(h > 0.0))
    throw std::invalid_argument("dominant_frequency: h must be positive");

  const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
  if (*lo == *hi)
    throw std::invalid_argument("dominant_frequency: series has zero variance");

  const std::size_t n = series.size();
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);

  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = series[i] - mean;

  const auto spectrum = detail::dft_real(centered);
  std::size_t best = 1;
  double best_mag = std::abs(spectrum[1]);
  for (std::size_t k = 2; k <= n / 2; ++k) {
    const double mag = std::abs(spectrum[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  return static_cast<double>(best) / (static_cast<double>(n) * h);
}

double auto_horizon(const Params& p, State s0, double prerun_duration, double h) {
  Params q = p;
  q.sigma = 0.0;
  const auto n = static_cast<std::size_t>(std::llround(prerun_duration / h));
  const NoisePath path = NoisePath::zeros(h, n);
  const Trajectory traj = integrate(q, s0, path, prerun_duration);
  std::vector<double> xs(traj.states.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = traj.states[i].x;
  const double omega = dominant_frequency(xs, h);
  return 1.0 / (2.0 * omega);
}

}  // namespace bruss
