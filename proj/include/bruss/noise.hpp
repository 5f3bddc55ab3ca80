#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace bruss {

// Counter-based random stream, pinned across releases. Draw n of stream
// `seed` is a pure function of (seed, n):
//
//   bits(seed, n) = mix64(seed + (n+1) * 0x9E3779B97F4A7C15)
//
// where mix64 is the SplitMix64 finalizer (Vigna, public domain). Uniform
// doubles map the top 53 bits into the open interval (0, 1); Gaussians are
// obtained through Wichura's AS241 inverse normal CDF. The integer stream is
// exact on every platform; the Gaussian map inherits the libm's log/sqrt
// rounding. None of this may change without a format/version bump.

/// SplitMix64 avalanche finalizer.
inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Raw 64 random bits for draw n of stream `seed`.
inline std::uint64_t stream_bits(std::uint64_t seed, std::uint64_t n) noexcept {
  return mix64(seed + (n + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Uniform draw in the open interval (0, 1), strictly away from both ends.
inline double uniform01(std::uint64_t seed, std::uint64_t n) noexcept {
  return static_cast<double>(stream_bits(seed, n) >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

/// Inverse of the standard normal CDF (Wichura's algorithm AS241, double
/// precision). Requires p in (0, 1).
double inverse_normal_cdf(double p);

/// Standard normal draw n of stream `seed`.
inline double normal01(std::uint64_t seed, std::uint64_t n) {
  return inverse_normal_cdf(uniform01(seed, n));
}

/// Derived seed for ensemble member `index` of a master seed; pure function,
/// so task decomposition cannot change the streams.
inline std::uint64_t sub_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(master ^ mix64(index + 0x9E3779B97F4A7C15ULL));
}

/// A discretized Wiener path: `length` i.i.d. Normal(0, h) increments,
/// fully determined by (seed, h, length). Immutable after construction.
class NoisePath {
 public:
  /// Generate increments dW_n = sqrt(h) * normal01(seed, n).
  /// Rejects h <= 0 and length == 0.
  static NoisePath generate(std::uint64_t seed, double h, std::size_t length);

  /// All-zero increments; useful wherever sigma = 0 makes the noise inert.
  static NoisePath zeros(double h, std::size_t length);

  /// Wrap externally supplied increments (e.g. a coarsened path or one read
  /// from another tool). The seed is carried as a label only.
  static NoisePath from_increments(std::uint64_t seed, double h,
                                   std::vector<double> increments);

  std::uint64_t seed() const { return seed_; }
  double h() const { return h_; }
  std::size_t length() const { return increments_.size(); }
  double duration() const { return h_ * static_cast<double>(length()); }

  double increment(std::size_t n) const { return increments_[n]; }
  std::span<const double> increments() const { return increments_; }

  /// W at t_n = n*h, i.e. the sum of the first n increments; n may equal
  /// length(). Throws std::out_of_range otherwise.
  double partial_sum(std::size_t n) const;

  /// Binary dump: magic "BRNPATH1", then seed (u64), h (f64), length (u64),
  /// then the increments (f64 each), all little-endian IEEE-754.
  void dump(std::ostream& os) const;
  static NoisePath load(std::istream& is);

 private:
  NoisePath(std::uint64_t seed, double h, std::vector<double> inc)
      : seed_(seed), h_(h), increments_(std::move(inc)) {}

  std::uint64_t seed_ = 0;
  double h_ = 0.0;
  std::vector<double> increments_;
};

/// View of a base path on the fast time scale tau = t/epsilon. The rescaled
/// increment n equals epsilon^{-1/2} * base increment n and represents a
/// Wiener increment over the fast step h_base/epsilon, so each increment's
/// variance again equals its own step size.
class RescaledPath {
 public:
  RescaledPath(NoisePath base, double epsilon);

  const NoisePath& base() const { return base_; }
  double epsilon() const { return epsilon_; }
  double h() const { return base_.h() / epsilon_; }
  std::size_t length() const { return base_.length(); }
  double duration() const { return h() * static_cast<double>(length()); }

  double increment(std::size_t n) const { return scale_ * base_.increment(n); }

  /// Equals scale * base.partial_sum(n) exactly (single multiplication).
  double partial_sum(std::size_t n) const { return scale_ * base_.partial_sum(n); }

 private:
  NoisePath base_;
  double epsilon_;
  double scale_;
};

inline RescaledPath rescale(NoisePath base, double epsilon) {
  return RescaledPath(std::move(base), epsilon);
}

}  // namespace bruss
