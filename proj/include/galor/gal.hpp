#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "galor/math/normal.hpp"
#include "galor/random.hpp"

// The generalized asymmetric Laplace (GAL) family.  Two parameterizations:
//
//   GalParams         -- (mu, sigma, p, alpha): p is the AL mixing weight,
//                        alpha the shape introduced through the half-normal
//                        mixture component.
//   QuantileGalParams -- (mu, sigma, gamma, p0): the quantile-fixed form in
//                        which the p0-quantile sits exactly at mu for every
//                        admissible gamma.  Maps one way into GalParams via
//                        mixture_constants.
//
// Densities and distribution functions are evaluated in log space; the
// exp{...} * Phi(...) products in the closed forms overflow in linear
// arithmetic long before the distribution itself is extreme.

namespace galor {

/// log of g(gamma) = 2 Phi(-|gamma|) exp(gamma^2 / 2); g maps [0, inf) onto
/// (0, 1] and is strictly decreasing in |gamma|.
inline double log_g(double gamma) {
  return std::numbers::ln2 + math::norm_log_cdf(-std::abs(gamma)) +
         0.5 * gamma * gamma;
}

struct GammaBounds {
  double lower, upper;
};

namespace detail {

// Unique t > 0 with log_g(t) = target (target < 0); bracketed bisection.
inline double solve_log_g(double target) {
  double lo = 0.0, hi = 40.0;
  while (log_g(hi) > target) hi *= 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (log_g(mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Admissible open interval (L, U) for the shape gamma at quantile p0:
/// g(U) = p0 and g(|L|) = 1 - p0.
inline GammaBounds gamma_bounds(double p0) {
  if (!(p0 > 0.0 && p0 < 1.0))
    throw std::invalid_argument("gamma_bounds: p0 must lie in (0,1)");
  return {-detail::solve_log_g(std::log1p(-p0)),
          detail::solve_log_g(std::log(p0))};
}

struct GalParams {
  double mu, sigma, p, alpha;

  GalParams(double mu_, double sigma_, double p_, double alpha_)
      : mu(mu_), sigma(sigma_), p(p_), alpha(alpha_) {
    if (!(sigma > 0.0)) throw std::invalid_argument("GalParams: sigma must be positive");
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("GalParams: p must lie in (0,1)");
  }
};

struct MixtureConstants {
  double p, A, B, C, alpha;
  double p_gamma_plus, p_gamma_minus;
};

inline MixtureConstants mixture_constants(double p0, double gamma,
                                          const GammaBounds& bounds) {
  if (!(gamma > bounds.lower && gamma < bounds.upper)) {
    std::ostringstream oss;
    oss << "mixture_constants: gamma=" << gamma << " violates the "
        << (gamma <= bounds.lower ? "lower" : "upper") << " bound of ("
        << bounds.lower << ", " << bounds.upper << ") for p0=" << p0;
    throw std::domain_error(oss.str());
  }
  MixtureConstants mc;
  if (gamma == 0.0) {
    mc.p = p0;
    mc.C = -1.0 / p0;
    mc.alpha = 0.0;
  } else {
    const double neg = gamma < 0.0 ? 1.0 : 0.0;
    mc.p = neg + (p0 - neg) * std::exp(-log_g(gamma));
    mc.C = 1.0 / ((gamma > 0.0 ? 1.0 : 0.0) - mc.p);
    mc.alpha = mc.C * std::abs(gamma);
  }
  const double pq = mc.p * (1.0 - mc.p);
  mc.A = (1.0 - 2.0 * mc.p) / pq;
  mc.B = 2.0 / pq;
  mc.p_gamma_plus = mc.p - (gamma > 0.0 ? 1.0 : 0.0);
  mc.p_gamma_minus = mc.p - (gamma < 0.0 ? 1.0 : 0.0);
  return mc;
}

inline MixtureConstants mixture_constants(double p0, double gamma) {
  return mixture_constants(p0, gamma, gamma_bounds(p0));
}

struct QuantileGalParams {
  double mu, sigma, gamma, p0;

  QuantileGalParams(double mu_, double sigma_, double gamma_, double p0_)
      : QuantileGalParams(mu_, sigma_, gamma_, p0_, gamma_bounds(p0_)) {}

  QuantileGalParams(double mu_, double sigma_, double gamma_, double p0_,
                    const GammaBounds& bounds)
      : mu(mu_), sigma(sigma_), gamma(gamma_), p0(p0_),
        constants_(mixture_constants(p0_, gamma_, bounds)) {
    if (!(sigma > 0.0))
      throw std::invalid_argument("QuantileGalParams: sigma must be positive");
  }

  const MixtureConstants& constants() const { return constants_; }

  GalParams to_general() const {
    return {mu, sigma, constants_.p, constants_.alpha};
  }

 private:
  MixtureConstants constants_;
};

namespace detail {

// Standardized (mu=0, sigma=1) log-density, alpha >= 0.  The alpha < 0 case
// is routed through the mirror identity f_{p,a}(y) = f_{1-p,-a}(-y).
inline double std_log_pdf_nonneg(double y, double p, double a) {
  if (a == 0.0)
    return std::log(p * (1.0 - p)) - y * (p - (y <= 0.0 ? 1.0 : 0.0));
  const double lead = std::numbers::ln2 + std::log(p * (1.0 - p));
  const double pm1 = p - 1.0;
  const double t2 = math::norm_log_cdf(a * pm1 - (y > 0.0 ? y / a : 0.0)) -
                    y * pm1 + 0.5 * a * a * pm1 * pm1;
  if (y <= 0.0) return lead + t2;
  const double t1 = math::norm_log_cdf_diff(-a * p, y / a - a * p) - y * p +
                    0.5 * a * a * p * p;
  return lead + math::log_add_exp(t1, t2);
}

struct LogCdfPair {
  double log_cdf, log_sf;
};

inline LogCdfPair std_log_cdf_nonneg(double y, double p, double a) {
  if (std::isinf(y)) return y > 0.0 ? LogCdfPair{0.0, math::neg_inf}
                                    : LogCdfPair{math::neg_inf, 0.0};
  if (a == 0.0) {
    if (y <= 0.0) {
      const double lc = std::log(p) + y * (1.0 - p);
      return {lc, math::log1mexp(lc)};
    }
    const double ls = std::log1p(-p) - y * p;
    return {std::log1p(-std::exp(ls)), ls};
  }
  const double pm1 = p - 1.0;
  if (y <= 0.0) {
    double lc = std::numbers::ln2 + std::log(p) + math::norm_log_cdf(a * pm1) -
                y * pm1 + 0.5 * a * a * pm1 * pm1;
    if (lc >= 0.0) lc = -1e-300;  // strictly below 1 analytically
    return {lc, math::log1mexp(lc)};
  }
  const double s1 = std::numbers::ln2 + math::norm_log_cdf(-y / a);
  const double s2 = std::numbers::ln2 + std::log1p(-p) - y * p +
                    0.5 * a * a * p * p +
                    math::norm_log_cdf_diff(-a * p, y / a - a * p);
  const double s3 = std::numbers::ln2 + std::log(p) - y * pm1 +
                    0.5 * a * a * pm1 * pm1 +
                    math::norm_log_cdf(a * pm1 - y / a);
  const std::array<math::SignedLog, 3> sf_terms{
      math::SignedLog{s1, 1.0}, {s2, 1.0}, {s3, -1.0}};
  const auto sf = math::signed_log_sum(sf_terms);
  const double ls = sf.sign > 0.0 ? std::min(sf.log_abs, 0.0) : math::neg_inf;
  double lc;
  if (ls > -std::numbers::ln2) {  // survival > 1/2: form the cdf directly
    const std::array<math::SignedLog, 4> cdf_terms{
        math::SignedLog{0.0, 1.0}, {s1, -1.0}, {s2, -1.0}, {s3, 1.0}};
    const auto c = math::signed_log_sum(cdf_terms);
    lc = c.sign > 0.0 ? std::min(c.log_abs, 0.0) : math::neg_inf;
  } else {
    lc = ls == math::neg_inf ? 0.0 : std::log1p(-std::exp(ls));
  }
  return {lc, ls};
}

}  // namespace detail

inline double log_pdf(double y, const GalParams& g) {
  double ys = (y - g.mu) / g.sigma, p = g.p, a = g.alpha;
  if (a < 0.0) {
    ys = -ys;
    p = 1.0 - p;
    a = -a;
  }
  return detail::std_log_pdf_nonneg(ys, p, a) - std::log(g.sigma);
}

inline double pdf(double y, const GalParams& g) { return std::exp(log_pdf(y, g)); }

inline detail::LogCdfPair log_cdf_pair(double y, const GalParams& g) {
  double ys = (y - g.mu) / g.sigma, p = g.p, a = g.alpha;
  if (a < 0.0) {  // F_{p,a}(y) = 1 - F_{1-p,-a}(-y)
    const auto flipped = detail::std_log_cdf_nonneg(-ys, 1.0 - p, -a);
    return {flipped.log_sf, flipped.log_cdf};
  }
  return detail::std_log_cdf_nonneg(ys, p, a);
}

inline double log_cdf(double y, const GalParams& g) { return log_cdf_pair(y, g).log_cdf; }
inline double log_sf(double y, const GalParams& g) { return log_cdf_pair(y, g).log_sf; }
inline double cdf(double y, const GalParams& g) { return std::exp(log_cdf(y, g)); }

/// log P(lo < Y <= hi); bounds may be infinite.
inline double interval_log_prob(double lo, double hi, const GalParams& g) {
  if (!(lo < hi)) return math::neg_inf;
  const bool lo_open = std::isinf(lo) && lo < 0.0;
  const bool hi_open = std::isinf(hi) && hi > 0.0;
  if (lo_open && hi_open) return 0.0;
  if (lo_open) return log_cdf(hi, g);
  if (hi_open) return log_sf(lo, g);
  const auto at_hi = log_cdf_pair(hi, g);
  if (at_hi.log_cdf <= -std::numbers::ln2) {  // both in the lower tail
    const double d = log_cdf(lo, g) - at_hi.log_cdf;
    return d < 0.0 ? at_hi.log_cdf + math::log1mexp(d) : math::neg_inf;
  }
  const auto at_lo = log_cdf_pair(lo, g);
  if (at_lo.log_sf <= -std::numbers::ln2) {  // both in the upper tail
    const double d = at_hi.log_sf - at_lo.log_sf;
    return d < 0.0 ? at_lo.log_sf + math::log1mexp(d) : math::neg_inf;
  }
  const double diff = std::exp(at_hi.log_cdf) - std::exp(at_lo.log_cdf);
  return diff > 0.0 ? std::log(diff) : math::neg_inf;
}

/// Moment generating function; defined for t strictly inside
/// ((p-1)/sigma, p/sigma).
inline double mgf(double t, const GalParams& g) {
  const double lo = (g.p - 1.0) / g.sigma, hi = g.p / g.sigma;
  const double margin = 1e-9 * std::max(std::abs(lo), hi);
  if (!(t > lo + margin && t < hi - margin)) {
    std::ostringstream oss;
    oss << "mgf: t=" << t << " outside the existence window (" << lo << ", "
        << hi << ")";
    throw std::domain_error(oss.str());
  }
  const double st = g.sigma * t;
  const double log_m = std::log(2.0 * g.p * (1.0 - g.p)) + g.mu * t +
                       0.5 * g.alpha * g.alpha * st * st +
                       math::norm_log_cdf(g.alpha * st) -
                       std::log((g.p - st) * (1.0 - g.p + st));
  return std::exp(log_m);
}

struct Moments {
  double mean, variance, skewness;
};

inline Moments moments(const GalParams& g) {
  constexpr double two_over_pi = 2.0 / std::numbers::pi;
  const double pq = g.p * (1.0 - g.p);
  const double A = (1.0 - 2.0 * g.p) / pq;
  const double B = 2.0 / pq;
  const double a = g.alpha;
  const double mean = g.mu + g.sigma * (std::sqrt(two_over_pi) * a + A);
  const double var_std = a * a * (1.0 - two_over_pi) + A * A + B;
  const double m3_std = a * a * a * std::sqrt(two_over_pi) * (2.0 * two_over_pi - 1.0) +
                        2.0 * A * A * A + 3.0 * A * B;
  return {mean, g.sigma * g.sigma * var_std,
          m3_std / (var_std * std::sqrt(var_std))};
}

// Quantile-fixed forwarding.
inline double log_pdf(double y, const QuantileGalParams& q) { return log_pdf(y, q.to_general()); }
inline double pdf(double y, const QuantileGalParams& q) { return pdf(y, q.to_general()); }
inline double log_cdf(double y, const QuantileGalParams& q) { return log_cdf(y, q.to_general()); }
inline double log_sf(double y, const QuantileGalParams& q) { return log_sf(y, q.to_general()); }
inline double cdf(double y, const QuantileGalParams& q) { return cdf(y, q.to_general()); }
inline double interval_log_prob(double lo, double hi, const QuantileGalParams& q) {
  return interval_log_prob(lo, hi, q.to_general());
}
inline Moments moments(const QuantileGalParams& q) { return moments(q.to_general()); }

/// One draw through the mixture representation
/// Y = mu + sigma*(A W + C |gamma| S + sqrt(B W) U).
inline double sample_one(const QuantileGalParams& q, RandomStream& rng) {
  const auto& mc = q.constants();
  const double w = rng.exponential();
  const double s = std::abs(rng.normal());
  const double u = rng.normal();
  return q.mu + q.sigma * (mc.A * w + mc.C * std::abs(q.gamma) * s +
                           std::sqrt(mc.B * w) * u);
}

inline std::vector<double> sample(const QuantileGalParams& q, std::size_t count,
                                  RandomStream& rng) {
  std::vector<double> out(count);
  for (auto& v : out) v = sample_one(q, rng);
  return out;
}

}  // namespace galor
