#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <span>

// Standard-normal density, distribution function and quantile, plus the
// log-domain helpers the rest of the library is built on.  The log forms
// stay finite for arguments far outside the range where Phi itself
// underflows, which is what makes the tail-heavy density formulas usable.

namespace galor::math {

inline constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
inline constexpr double log_two_pi = 1.8378770664093454836;
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

inline double norm_pdf(double x) {
  return std::exp(-0.5 * x * x - 0.5 * log_two_pi);
}

inline double norm_log_pdf(double x) { return -0.5 * x * x - 0.5 * log_two_pi; }

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x * inv_sqrt2); }

/// Upper tail P(Z > x).
inline double norm_sf(double x) { return 0.5 * std::erfc(x * inv_sqrt2); }

/// log Phi(x), finite for all finite x.  erfc carries us to x ~ -37; past
/// that the Mills-ratio asymptotic series takes over.
inline double norm_log_cdf(double x) {
  if (x >= 0.0) return std::log1p(-0.5 * std::erfc(x * inv_sqrt2));
  if (x > -37.0) return std::log(0.5 * std::erfc(-x * inv_sqrt2));
  const double r = 1.0 / (x * x);
  const double series =
      -r * (1.0 - r * (3.0 - r * (15.0 - r * (105.0 - r * (945.0 - r * 10395.0)))));
  return norm_log_pdf(x) - std::log(-x) + std::log1p(series);
}

inline double norm_log_sf(double x) { return norm_log_cdf(-x); }

/// log(1 - e^x) for x < 0.
inline double log1mexp(double x) {
  if (x >= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return x > -std::numbers::ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

inline double log_add_exp(double a, double b) {
  if (a == neg_inf) return b;
  if (b == neg_inf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

/// log(Phi(b) - Phi(a)) for a < b, stable in both tails.
inline double norm_log_cdf_diff(double a, double b) {
  if (a >= b) return neg_inf;
  if (a <= 0.0 && b >= 0.0) {
    const double d = norm_cdf(b) - norm_cdf(a);
    return d > 0.0 ? std::log(d) : neg_inf;
  }
  double hi, lo;
  if (b < 0.0) {  // both in the left tail
    hi = norm_log_cdf(b);
    lo = norm_log_cdf(a);
  } else {  // both in the right tail: Phi(b)-Phi(a) = sf(a)-sf(b)
    hi = norm_log_sf(a);
    lo = norm_log_sf(b);
  }
  if (hi == neg_inf) return neg_inf;
  const double d = lo - hi;
  return d >= 0.0 ? neg_inf : hi + log1mexp(d);
}

/// Signed sum of terms given as (sign, log|term|); returns (sign, log|sum|).
struct SignedLog {
  double log_abs = neg_inf;
  double sign = 0.0;
};

inline SignedLog signed_log_sum(std::span<const SignedLog> terms) {
  double m = neg_inf;
  for (const auto& t : terms)
    if (t.sign != 0.0 && t.log_abs > m) m = t.log_abs;
  if (m == neg_inf) return {};
  double acc = 0.0;
  for (const auto& t : terms)
    if (t.sign != 0.0) acc += t.sign * std::exp(t.log_abs - m);
  if (acc == 0.0) return {};
  return {m + std::log(std::abs(acc)), acc > 0.0 ? 1.0 : -1.0};
}

/// Inverse of the standard normal cdf (Wichura's AS 241, ~1 ulp of double).
inline double norm_quantile(double p) {
  if (p <= 0.0) return neg_inf;
  if (p >= 1.0) return pos_inf;
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852854561 + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

}  // namespace galor::math
