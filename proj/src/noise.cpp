#include "bruss/noise.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace bruss {

// Wichura's algorithm AS241 (PPND16): rational approximations for the
// inverse normal CDF, accurate to about 1 part in 1e16. Three branches:
// central |p - 1/2| <= 0.425 and two tail regimes split at r = 5 with
// r = sqrt(-log(min(p, 1-p))).
double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("inverse_normal_cdf: p must lie in (0,1)");

  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }

  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
              3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
            4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
          (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
              6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
            2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
              2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
            5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
          (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
              1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
            5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

NoisePath NoisePath::generate(std::uint64_t seed, double h, std::size_t length) {
  if (!(h > 0.0)) throw std::invalid_argument("NoisePath: h must be positive");
  if (length == 0) throw std::invalid_argument("NoisePath: length must be >= 1");
  std::vector<double> inc(length);
  const double sqrt_h = std::sqrt(h);
  for (std::size_t n = 0; n < length; ++n)
    inc[n] = sqrt_h * normal01(seed, n);
  return NoisePath(seed, h, std::move(inc));
}

NoisePath NoisePath::zeros(double h, std::size_t length) {
  if (!(h > 0.0)) throw std::invalid_argument("NoisePath: h must be positive");
  if (length == 0) throw std::invalid_argument("NoisePath: length must be >= 1");
  return NoisePath(0, h, std::vector<double>(length, 0.0));
}

NoisePath NoisePath::from_increments(std::uint64_t seed, double h,
                                     std::vector<double> increments) {
  if (!(h > 0.0)) throw std::invalid_argument("NoisePath: h must be positive");
  if (increments.empty())
    throw std::invalid_argument("NoisePath: length must be >= 1");
  return NoisePath(seed, h, std::move(increments));
}

double NoisePath::partial_sum(std::size_t n) const {
  if (n > length()) throw std::out_of_range("NoisePath::partial_sum: n > length");
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += increments_[k];
  return s;
}

namespace {

constexpr char kMagic[8] = {'B', 'R', 'N', 'P', 'A', 'T', 'H', '1'};

void put_u64(std::ostream& os, std::uint64_t v) {
  char buf[8];
  for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(buf, 8);
}

void put_f64(std::ostream& os, double v) {
  put_u64(os, std::bit_cast<std::uint64_t>(v));
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char buf[8];
  is.read(reinterpret_cast<char*>(buf), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

}  // namespace

void NoisePath::dump(std::ostream& os) const {
  os.write(kMagic, sizeof kMagic);
  put_u64(os, seed_);
  put_f64(os, h_);
  put_u64(os, static_cast<std::uint64_t>(length()));
  for (double v : increments_) put_f64(os, v);
}

NoisePath NoisePath::load(std::istream& is) {
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("NoisePath::load: bad magic");
  const std::uint64_t seed = get_u64(is);
  const double h = get_f64(is);
  const std::uint64_t length = get_u64(is);
  std::vector<double> inc(length);
  for (auto& v : inc) v = get_f64(is);
  if (!is) throw std::runtime_error("NoisePath::load: truncated stream");
  if (!(h > 0.0) || length == 0)
    throw std::runtime_error("NoisePath::load: invalid header");
  return NoisePath(seed, h, std::move(inc));
}

RescaledPath::RescaledPath(NoisePath base, double epsilon)
    : base_(std::move(base)), epsilon_(epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("RescaledPath: epsilon must be positive");
  scale_ = 1.0 / std::sqrt(epsilon);
}

}  // namespace bruss
