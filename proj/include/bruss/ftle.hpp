#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bruss/integrator.hpp"
#include "bruss/mat2.hpp"
#include "bruss/model.hpp"
#include "bruss/noise.hpp"

namespace bruss {

/// Fundamental matrix of the variational flow in rescaled form: the true
/// matrix is exp(log_scale) * entries. Scalar rescaling commutes with the
/// operator norm, so the finite-time exponent is unaffected.
struct TangentMatrix {
  Mat2 entries = Mat2::identity();
  double log_scale = 0.0;
};

/// Drift of the Ito variational system, (J(s) + (sigma^2/2) [[1,0],[-1,0]]) Phi.
/// The correction equals (1/2) sigma^2 B^2 for the noise matrix B = [[-1,0],[1,0]].
inline Mat2 variational_drift(const Params& p, const State& s, const Mat2& phi) {
  Mat2 a = jacobian(p, s);
  const double c = 0.5 * p.sigma * p.sigma;
  a.m00 += c;
  a.m10 -= c;
  return a * phi;
}

/// Diffusion of the variational system, sigma [[-1,0],[1,0]] Phi.
inline Mat2 variational_diffusion(const Params& p, const Mat2& phi) {
  return {-p.sigma * phi.m00, -p.sigma * phi.m01,
          p.sigma * phi.m00, p.sigma * phi.m01};
}

/// Largest singular value of a 2x2 matrix via the closed form
/// sqrt((f + sqrt(f^2 - 4 det^2)) / 2) with f the sum of squared entries.
double spectral_norm_2x2(const Mat2& m);

struct FtleOptions {
  // Rescale `entries` by their spectral norm whenever it leaves this band,
  // accumulating the log of the factor.
  double renorm_lo = 1e-6;
  double renorm_hi = 1e6;
  StepLimits limits{};
};

/// Finite-time Lyapunov exponent at horizon T: co-integrates the state and
/// the variational matrix with the same increments, Phi_0 = identity, and
/// returns (log_scale + ln ||entries||) / T. The horizon is rounded to the
/// step grid of `path`.
double ftle(const Params& p, State s0, const NoisePath& path, double T,
            const FtleOptions& opts = {});

/// One co-integration pass emitting (realized T, lambda^T) at each requested
/// horizon; with a single horizon this equals ftle() bitwise.
std::vector<std::pair<double, double>> ftle_series(const Params& p, State s0,
                                                   const NoisePath& path,
                                                   std::span<const double> horizons,
                                                   const FtleOptions& opts = {});

/// Rectangular grid of initial conditions, endpoints included.
struct GridSpec {
  double x0 = 0.05, x1 = 4.0;
  double y0 = 0.05, y1 = 6.0;
  std::size_t nx = 100, ny = 100;

  double x_at(std::size_t ix) const {
    return nx > 1 ? x0 + (x1 - x0) * static_cast<double>(ix) / static_cast<double>(nx - 1) : x0;
  }
  double y_at(std::size_t iy) const {
    return ny > 1 ? y0 + (y1 - y0) * static_cast<double>(iy) / static_cast<double>(ny - 1) : y0;
  }
};

/// FTLE landscape: one lambda^T per grid cell, all cells sharing the same
/// noise realization. Cells that blow up hold NaN.
struct FtleField {
  GridSpec grid;
  double T = 0.0;       // realized horizon (step-grid multiple)
  std::uint64_t seed = 0;
  double h = 0.0;
  std::vector<double> values;  // row-major, values[iy * nx + ix]

  double at(std::size_t ix, std::size_t iy) const { return values[iy * grid.nx + ix]; }

  /// Fraction of finite cells with a positive exponent.
  double positive_fraction() const;
};

/// Compute the landscape; cells are independent tasks over an immutable path,
/// each writing its pre-assigned slot, so the result is bitwise independent
/// of `threads`.
FtleField ftle_field(const Params& p, const GridSpec& grid, const NoisePath& path,
                     double T, unsigned threads = 1, const FtleOptions& opts = {});

/// Frequency (cycles per unit time) of the largest-magnitude nonzero bin of
/// the DFT of the mean-removed series. Requires length >= 256 and a
/// non-flat series.
double dominant_frequency(std::span<const double> series, double h);

/// Horizon heuristic T = 1/(2 Omega), with Omega measured from a
/// deterministic (sigma = 0) pre-run of the x coordinate.
double auto_horizon(const Params& p, State s0, double prerun_duration = 200.0,
                    double h = 1e-3);

namespace detail {
/// In-place power-of-two FFT (inverse unnormalized when `inverse`).
void fft_pow2(std::vector<std::complex<double>>& a, bool inverse);
/// Full complex DFT of a real series, any length (Bluestein's algorithm).
std::vector<std::complex<double>> dft_real(std::span<const double> x);
}  // namespace detail

}  // namespace bruss
