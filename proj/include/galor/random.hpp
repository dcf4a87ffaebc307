#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "galor/math/normal.hpp"

// Seedable random stream plus the scalar variate generators the sampler
// needs: truncated normal, half-normal, GIG(1/2), gamma/beta and the
// scaled-beta prior density.  Streams are single-owner; parallel chains
// take distinct (seed, stream_id) pairs.

namespace galor {

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0)
      : seed_(seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id & 0xffffffffu),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    gen_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }

  /// Uniform on the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
  }

  double normal() { return math::norm_quantile(uniform()); }

  double exponential() { return -std::log(uniform()); }

 private:
  std::mt19937_64 gen_;
  std::uint64_t seed_;
};

namespace detail {

// One-sided/narrow tail sampler for N(0,1) on (a, b) with a >= 5: draws the
// excess from Exp(a) restricted to (0, b-a), then a Gaussian accept step.
inline double tail_truncated_std_normal(double a, double b, RandomStream& rng) {
  const double cap = std::isinf(b) ? 1.0 : -std::expm1(-a * (b - a));
  for (;;) {
    const double e = -std::log1p(-rng.uniform() * cap) / a;
    if (rng.uniform() <= std::exp(-0.5 * e * e)) return a + e;
  }
}

// N(0,1) conditioned on (a, b).
inline double truncated_std_normal(double a, double b, RandomStream& rng) {
  constexpr double tail_cut = 5.0;
  double x;
  if (a >= tail_cut) {
    x = tail_truncated_std_normal(a, b, rng);
  } else if (b <= -tail_cut) {
    x = -tail_truncated_std_normal(-b, -a, rng);
  } else if (a >= 0.0) {
    // standardize on the survival scale so interpolation keeps precision
    const double qa = math::norm_sf(a), qb = math::norm_sf(b);
    x = -math::norm_quantile(qb + rng.uniform() * (qa - qb));
  } else {
    const double pa = math::norm_cdf(a), pb = math::norm_cdf(b);
    x = math::norm_quantile(pa + rng.uniform() * (pb - pa));
  }
  if (!(x > a)) x = std::nextafter(a, b);
  if (!(x < b)) x = std::nextafter(b, a);
  return x;
}

}  // namespace detail

/// Draw from N(mean, variance) conditioned on the open interval (lo, hi).
inline double sample_truncated_normal(double mean, double variance, double lo,
                                      double hi, RandomStream& rng) {
  if (!(variance > 0.0)) throw std::invalid_argument("truncated normal: variance must be positive");
  if (!(lo < hi)) throw std::invalid_argument("truncated normal: degenerate interval");
  const double sd = std::sqrt(variance);
  const double a = (lo - mean) / sd, b = (hi - mean) / sd;
  return mean + sd * detail::truncated_std_normal(a, b, rng);
}

/// |N(0, scale_sq)|.
inline double sample_half_normal(double scale_sq, RandomStream& rng) {
  return std::sqrt(scale_sq) * std::abs(rng.normal());
}

/// Inverse-Gaussian(mean mu, shape lambda) via Michael-Schucany-Haas.  The
/// small root is computed in a form that avoids cancellation for mu >> lambda.
inline double sample_inverse_gaussian(double mu, double lambda, RandomStream& rng) {
  const double z = rng.normal();
  const double t = mu * z * z / lambda;
  const double x1 = mu / (1.0 + 0.5 * t + std::sqrt(t * (1.0 + 0.25 * t)));
  if (rng.uniform() <= mu / (mu + x1)) return x1;
  return mu * mu / x1;
}

/// GIG(1/2, a, b): density proportional to x^{-1/2} exp{-(a/x + b x)/2}.
/// The reciprocal of a GIG(1/2, a, b) draw is GIG(-1/2, b, a), which is
/// inverse-Gaussian, so one IG draw suffices.
inline double sample_gig_half(double a, double b, RandomStream& rng) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("gig(1/2): a and b must be positive");
  const double ig = sample_inverse_gaussian(std::sqrt(b / a), b, rng);
  return 1.0 / ig;
}

/// Mean of GIG(1/2, a, b): sqrt(a/b) * (1 + 1/sqrt(ab)).
inline double gig_half_mean(double a, double b) {
  return std::sqrt(a / b) * (1.0 + 1.0 / std::sqrt(a * b));
}

/// Gamma(shape, 1) via Marsaglia-Tsang squeeze.
inline double sample_gamma(double shape, RandomStream& rng) {
  if (!(shape > 0.0)) throw std::domain_error("gamma: shape must be positive");
  if (shape < 1.0)
    return sample_gamma(shape + 1.0, rng) * std::pow(rng.uniform(), 1.0 / shape);
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    const double x = rng.normal();
    const double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    const double v = t * t * t;
    const double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

inline double sample_beta(double a, double b, RandomStream& rng) {
  const double x = sample_gamma(a, rng);
  const double y = sample_gamma(b, rng);
  return x / (x + y);
}

/// Beta(a, b) rescaled to the interval (L, U).
inline double sample_scaled_beta(double L, double U, double a, double b,
                                 RandomStream& rng) {
  if (!(L < U)) throw std::invalid_argument("scaled beta: L must be below U");
  return L + (U - L) * sample_beta(a, b, rng);
}

inline double scaled_beta_log_pdf(double x, double L, double U, double a, double b) {
  if (!(x > L && x < U)) return math::neg_inf;
  const double t = (x - L) / (U - L);
  return (a - 1.0) * std::log(t) + (b - 1.0) * std::log1p(-t) -
         (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)) - std::log(U - L);
}

}  // namespace galor
