#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "galor/math/integrate.hpp"
#include "galor/math/normal.hpp"
#include "galor/random.hpp"

// Bivariate-normal rectangle probabilities and exact sampling from a
// rectangle-truncated bivariate normal.  The rectangle probability uses the
// Plackett identity: d/d(rho) P(rect) is the bivariate density summed with
// corner signs, so P(rect) equals the independence product plus a smooth
// one-dimensional integral over theta = asin(rho).

namespace galor {

struct Rectangle2D {
  double lo1, hi1, lo2, hi2;

  Rectangle2D(double l1, double h1, double l2, double h2)
      : lo1(l1), hi1(h1), lo2(l2), hi2(h2) {
    if (!(lo1 < hi1) || !(lo2 < hi2))
      throw std::invalid_argument("Rectangle2D: bounds must satisfy lo < hi");
  }
};

namespace detail {

inline double marginal_interval_prob(double a, double b) {
  if (a >= 0.0)  // survival scale
    return math::norm_sf(a) - math::norm_sf(b);
  return math::norm_cdf(b) - math::norm_cdf(a);
}

// exp{-(h^2 + k^2 - 2 h k sin(theta)) / (2 cos^2(theta))}, zero when a
// corner coordinate is infinite.
inline double plackett_kernel(double h, double k, double sin_t, double cos2_t) {
  if (std::isinf(h) || std::isinf(k)) return 0.0;
  return std::exp(-(h * h + k * k - 2.0 * h * k * sin_t) / (2.0 * cos2_t));
}

// P(a1 < X < b1, a2 < Y < b2) for standard bivariate normal, correlation rho.
inline double std_rect_prob(double a1, double b1, double a2, double b2, double rho) {
  const double indep =
      marginal_interval_prob(a1, b1) * marginal_interval_prob(a2, b2);
  if (rho == 0.0) return indep;
  const double phi = std::asin(rho);
  const auto corner_sum = [&](double theta) {
    const double s = std::sin(theta);
    const double c2 = 1.0 - s * s;
    return plackett_kernel(b1, b2, s, c2) - plackett_kernel(a1, b2, s, c2) -
           plackett_kernel(b1, a2, s, c2) + plackett_kernel(a1, a2, s, c2);
  };
  const double correction =
      math::integrate(corner_sum, 0.0, phi, 1e-12, 48) / (2.0 * std::numbers::pi);
  return std::min(1.0, std::max(0.0, indep + correction));
}

struct StdRect {
  double a1, b1, a2, b2, rho, sd1, sd2;
};

inline StdRect standardize(const Eigen::Vector2d& mean, const Eigen::Matrix2d& cov,
                           const Rectangle2D& rect) {
  if (std::abs(cov(0, 1) - cov(1, 0)) >
      1e-8 * (1.0 + std::abs(cov(0, 1)) + std::abs(cov(1, 0))))
    throw std::invalid_argument("bvn: covariance must be symmetric");
  const double v1 = cov(0, 0), v2 = cov(1, 1);
  const double c12 = 0.5 * (cov(0, 1) + cov(1, 0));
  if (!(v1 > 0.0) || !(v2 > 0.0) || !(v1 * v2 - c12 * c12 > 0.0))
    throw std::invalid_argument("bvn: covariance must be positive definite");
  StdRect s;
  s.sd1 = std::sqrt(v1);
  s.sd2 = std::sqrt(v2);
  s.rho = c12 / (s.sd1 * s.sd2);
  s.a1 = (rect.lo1 - mean(0)) / s.sd1;
  s.b1 = (rect.hi1 - mean(0)) / s.sd1;
  s.a2 = (rect.lo2 - mean(1)) / s.sd2;
  s.b2 = (rect.hi2 - mean(1)) / s.sd2;
  return s;
}

}  // namespace detail

/// P(rect) under N(mean, cov); deterministic, absolute error well below 1e-8.
inline double bvn_rectangle_prob(const Eigen::Vector2d& mean,
                                 const Eigen::Matrix2d& cov,
                                 const Rectangle2D& rect) {
  const auto s = detail::standardize(mean, cov, rect);
  return detail::std_rect_prob(s.a1, s.b1, s.a2, s.b2, s.rho);
}

/// Log-density at x of N(mean, cov) truncated to rect (normalization included;
/// it depends on the mean, so it does not cancel between forward and reverse
/// proposal evaluations).
inline double btn_log_density(const Eigen::Vector2d& x, const Eigen::Vector2d& mean,
                              const Eigen::Matrix2d& cov, const Rectangle2D& rect) {
  if (!(x(0) > rect.lo1 && x(0) < rect.hi1 && x(1) > rect.lo2 && x(1) < rect.hi2))
    return math::neg_inf;
  const auto s = detail::standardize(mean, cov, rect);
  const double prob = detail::std_rect_prob(s.a1, s.b1, s.a2, s.b2, s.rho);
  if (!(prob > 0.0)) return math::neg_inf;
  const double z1 = (x(0) - mean(0)) / s.sd1;
  const double z2 = (x(1) - mean(1)) / s.sd2;
  const double om = 1.0 - s.rho * s.rho;
  const double quad = (z1 * z1 - 2.0 * s.rho * z1 * z2 + z2 * z2) / om;
  return -math::log_two_pi - std::log(s.sd1 * s.sd2) - 0.5 * std::log(om) -
         0.5 * quad - std::log(prob);
}

/// Exact draw from N(mean, cov) restricted to rect.  Plain rejection when the
/// rectangle carries enough mass; otherwise the first coordinate is drawn by
/// inverting its exact restricted marginal and the second from the conditional
/// truncated normal.  Both routes are exact, so mixing them is too.
inline Eigen::Vector2d sample_btn(const Eigen::Vector2d& mean,
                                  const Eigen::Matrix2d& cov,
                                  const Rectangle2D& rect, RandomStream& rng) {
  const auto s = detail::standardize(mean, cov, rect);
  const double prob = detail::std_rect_prob(s.a1, s.b1, s.a2, s.b2, s.rho);
  if (!(prob > 1e-12))
    throw std::runtime_error(
        "sample_btn: rectangle probability vanishes; shrink the tuning factor");

  const double l21 = s.rho, l22 = std::sqrt(1.0 - s.rho * s.rho);
  if (prob > 0.05) {
    for (int attempt = 0; attempt < 64; ++attempt) {
      const double u = rng.normal(), v = rng.normal();
      const double z1 = u;
      const double z2 = l21 * u + l22 * v;
      if (z1 > s.a1 && z1 < s.b1 && z2 > s.a2 && z2 < s.b2)
        return {mean(0) + s.sd1 * z1, mean(1) + s.sd2 * z2};
    }
  }

  // Inverse-cdf on the restricted marginal of the first coordinate.
  const double target = rng.uniform() * prob;
  double lo = std::max(s.a1, -40.0), hi = std::min(s.b1, 40.0);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (detail::std_rect_prob(s.a1, mid, s.a2, s.b2, s.rho) < target)
      lo = mid;
    else
      hi = mid;
  }
  double z1 = 0.5 * (lo + hi);
  if (!(z1 > s.a1)) z1 = std::nextafter(s.a1, s.b1);
  if (!(z1 < s.b1)) z1 = std::nextafter(s.b1, s.a1);
  const double cond_mean = s.rho * z1;
  const double z2 = cond_mean + l22 * detail::truncated_std_normal(
                                          (s.a2 - cond_mean) / l22,
                                          (s.b2 - cond_mean) / l22, rng);
  return {mean(0) + s.sd1 * z1, mean(1) + s.sd2 * z2};
}

}  // namespace galor
