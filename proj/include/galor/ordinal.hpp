#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "galor/gal.hpp"
#include "galor/math/normal.hpp"

// The ordinal quantile regression model: latent z_i = x_i'beta + eps_i with
// GAL(0, sigma, gamma) errors at quantile p0, observed through the cut-point
// vector xi.  Identification fixes xi_1 = 0 and xi_2 = c; the remaining
// interior cut-points are parameterized by log spacings delta.

namespace galor {

struct OrdinalDataset {
  Eigen::MatrixXd X;            // n x k covariates
  Eigen::VectorXi y;            // outcomes in 1..J
  int J = 0;
  std::vector<std::string> covariate_names;

  int n() const { return static_cast<int>(X.rows()); }
  int k() const { return static_cast<int>(X.cols()); }

  void validate() const {
    if (X.rows() != y.size())
      throw std::invalid_argument("dataset: X and y row counts differ");
    if (J < 3) throw std::invalid_argument("dataset: needs at least 3 outcome categories");
    if (X.rows() < X.cols())
      throw std::invalid_argument("dataset: fewer observations than covariates");
    std::vector<int> counts(J, 0);
    for (int i = 0; i < y.size(); ++i) {
      if (y(i) < 1 || y(i) > J)
        throw std::invalid_argument("dataset: outcome outside 1..J at row " +
                                    std::to_string(i + 1));
      ++counts[y(i) - 1];
    }
    for (int j = 0; j < J; ++j)
      if (counts[j] == 0)
        throw std::invalid_argument("dataset: category " + std::to_string(j + 1) +
                                    " never observed");
  }

  std::vector<int> category_counts() const {
    std::vector<int> counts(J, 0);
    for (int i = 0; i < y.size(); ++i) ++counts[y(i) - 1];
    return counts;
  }
};

/// Cut-point block: xi_1 = 0 and xi_2 = cut2 are fixed; delta holds the J-3
/// free log spacings.
struct CutpointSpec {
  double cut2;
  Eigen::VectorXd delta;
};

/// Full cut-point vector (xi_0, ..., xi_J) = (-inf, 0, c, c + e^{d1}, ..., +inf).
inline std::vector<double> delta_to_xi(const CutpointSpec& spec, int J) {
  if (spec.delta.size() != J - 3)
    throw std::invalid_argument("delta_to_xi: delta must have J-3 elements");
  std::vector<double> xi(J + 1);
  xi[0] = math::neg_inf;
  xi[1] = 0.0;
  xi[2] = spec.cut2;
  for (int j = 0; j < spec.delta.size(); ++j)
    xi[3 + j] = xi[2 + j] + std::exp(spec.delta(j));
  xi[J] = math::pos_inf;
  return xi;
}

/// Inverse of delta_to_xi on the free cut-points.
inline CutpointSpec xi_to_delta(const std::vector<double>& xi, int J) {
  CutpointSpec spec;
  spec.cut2 = xi[2];
  spec.delta.resize(J - 3);
  for (int j = 0; j < J - 3; ++j) spec.delta(j) = std::log(xi[3 + j] - xi[2 + j]);
  return spec;
}

struct PriorConfig {
  Eigen::VectorXd beta0;
  Eigen::MatrixXd B0;
  double n0 = 5.0;
  double d0 = 8.0;
  double sb_a = 4.0;
  double sb_b = 4.0;
  Eigen::VectorXd delta0;
  Eigen::MatrixXd D0;

  /// Moderately diffuse defaults: beta ~ N(0, 10 I), sigma ~ IG(5/2, 8/2),
  /// gamma ~ SB(L, U, 4, 4), delta ~ N(0, I).
  static PriorConfig defaults(int k, int J) {
    PriorConfig pc;
    pc.beta0 = Eigen::VectorXd::Zero(k);
    pc.B0 = 10.0 * Eigen::MatrixXd::Identity(k, k);
    pc.delta0 = Eigen::VectorXd::Zero(J - 3);
    pc.D0 = Eigen::MatrixXd::Identity(J - 3, J - 3);
    return pc;
  }
};

namespace detail {

inline double mvn_log_pdf(const Eigen::VectorXd& x, const Eigen::VectorXd& mean,
                          const Eigen::MatrixXd& cov) {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("mvn_log_pdf: covariance not positive definite");
  const Eigen::VectorXd d = x - mean;
  const Eigen::VectorXd w = llt.matrixL().solve(d);
  double log_det = 0.0;
  for (int i = 0; i < cov.rows(); ++i) log_det += std::log(llt.matrixL()(i, i));
  return -0.5 * x.size() * math::log_two_pi - log_det - 0.5 * w.squaredNorm();
}

inline double ig_log_pdf(double x, double shape, double rate) {
  if (!(x > 0.0)) return math::neg_inf;
  return shape * std::log(rate) - std::lgamma(shape) - (shape + 1.0) * std::log(x) -
         rate / x;
}

}  // namespace detail

/// Per-observation log category probability, ln P(y_i = j | x_i).
inline double category_log_prob(double xb, int j, const std::vector<double>& xi,
                                double sigma, const GalParams& std_gal) {
  const double lo = std::isinf(xi[j - 1]) ? math::neg_inf : (xi[j - 1] - xb) / sigma;
  const double hi = std::isinf(xi[j]) ? math::pos_inf : (xi[j] - xb) / sigma;
  return interval_log_prob(lo, hi, std_gal);
}

/// Full data log-likelihood.  Returns -inf when any observation has zero
/// category probability (so MH proposals simply get rejected).
inline double log_likelihood(const Eigen::VectorXd& beta, double sigma, double gamma,
                             const CutpointSpec& spec, const OrdinalDataset& data,
                             double p0, const GammaBounds& bounds) {
  if (beta.size() != data.k())
    throw std::invalid_argument("log_likelihood: beta dimension mismatch");
  if (!(sigma > 0.0)) return math::neg_inf;
  if (!(gamma > bounds.lower && gamma < bounds.upper)) return math::neg_inf;
  const auto mc = mixture_constants(p0, gamma, bounds);
  const GalParams std_gal(0.0, 1.0, mc.p, mc.alpha);
  const auto xi = delta_to_xi(spec, data.J);
  const Eigen::VectorXd xb = data.X * beta;
  double total = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    const double lp = category_log_prob(xb(i), data.y(i), xi, sigma, std_gal);
    if (lp == math::neg_inf) return math::neg_inf;
    total += lp;
  }
  return total;
}

inline double log_likelihood(const Eigen::VectorXd& beta, double sigma, double gamma,
                             const CutpointSpec& spec, const OrdinalDataset& data,
                             double p0) {
  return log_likelihood(beta, sigma, gamma, spec, data, p0, gamma_bounds(p0));
}

/// P(y = j | x) for j = 1..J.
inline Eigen::VectorXd category_probabilities(const Eigen::VectorXd& x,
                                              const Eigen::VectorXd& beta,
                                              double sigma, double gamma,
                                              const CutpointSpec& spec, int J,
                                              double p0) {
  if (x.size() != beta.size())
    throw std::invalid_argument("category_probabilities: dimension mismatch");
  const auto mc = mixture_constants(p0, gamma);
  const GalParams std_gal(0.0, 1.0, mc.p, mc.alpha);
  const auto xi = delta_to_xi(spec, J);
  const double xb = x.dot(beta);
  Eigen::VectorXd probs(J);
  for (int j = 1; j <= J; ++j)
    probs(j - 1) = std::exp(category_log_prob(xb, j, xi, sigma, std_gal));
  return probs;
}

/// Joint log prior over (beta, sigma, gamma, delta); -inf outside support.
inline double log_prior(const Eigen::VectorXd& beta, double sigma, double gamma,
                        const CutpointSpec& spec, const PriorConfig& priors,
                        double p0, const GammaBounds& bounds) {
  if (!(sigma > 0.0) || !(gamma > bounds.lower && gamma < bounds.upper))
    return math::neg_inf;
  double lp = detail::mvn_log_pdf(beta, priors.beta0, priors.B0);
  lp += detail::ig_log_pdf(sigma, 0.5 * priors.n0, 0.5 * priors.d0);
  lp += scaled_beta_log_pdf(gamma, bounds.lower, bounds.upper, priors.sb_a, priors.sb_b);
  if (spec.delta.size() > 0)
    lp += detail::mvn_log_pdf(spec.delta, priors.delta0, priors.D0);
  return lp;
}

inline double log_prior(const Eigen::VectorXd& beta, double sigma, double gamma,
                        const CutpointSpec& spec, const PriorConfig& priors,
                        double p0) {
  return log_prior(beta, sigma, gamma, spec, priors, p0, gamma_bounds(p0));
}

}  // namespace galor
