#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "galor/mcmc.hpp"
#include "galor/ordinal.hpp"

// Post-chain analysis: the conditional log-likelihood evaluated at posterior
// means, AIC/BIC, cross-model comparison tables, and covariate effects
// (changes in predicted category probabilities).

namespace galor {

struct FitSummary {
  std::string model;
  double quantile = 0.5;
  int n = 0, k = 0, J = 0;
  double cut2 = 0.0;
  int k_params = 0;
  double loglik = 0.0, aic = 0.0, bic = 0.0;
  std::vector<std::string> param_names;
  Eigen::VectorXd post_mean, post_sd;
  std::vector<double> inefficiency;
  double accept_sigma_gamma = 0.0, accept_delta = 0.0, runtime_seconds = 0.0;
};

inline double aic_value(double loglik, int k_params) {
  return -2.0 * loglik + 2.0 * k_params;
}

inline double bic_value(double loglik, int k_params, int n) {
  return -2.0 * loglik + k_params * std::log(static_cast<double>(n));
}

/// Plug-in summary: the conditional log-likelihood is the ordinal likelihood
/// evaluated at the posterior means of (beta, sigma, gamma, delta).
inline FitSummary fit_summary(const ChainOutput& chain, const OrdinalDataset& data) {
  if (chain.draws.rows() == 0) throw std::invalid_argument("fit_summary: empty chain");
  FitSummary s;
  s.model = model_name(chain.model);
  s.quantile = chain.quantile;
  s.n = chain.n;
  s.k = chain.k;
  s.J = chain.J;
  s.cut2 = chain.cut2;
  s.param_names = chain.param_names;
  s.post_mean = chain.posterior_mean();
  s.post_sd = chain.posterior_sd();
  s.inefficiency = chain.inefficiency;
  s.accept_sigma_gamma = chain.accept_sigma_gamma;
  s.accept_delta = chain.accept_delta;
  s.runtime_seconds = chain.runtime_seconds;

  const int k = chain.k, J = chain.J;
  const Eigen::VectorXd beta = s.post_mean.head(k);
  const double sigma = s.post_mean(k);
  const double gamma = chain.model == ModelKind::bqror ? 0.0 : s.post_mean(k + 1);
  CutpointSpec spec{chain.cut2, s.post_mean.tail(J - 3)};
  s.loglik = log_likelihood(beta, sigma, gamma, spec, data, chain.quantile);
  // free parameters: beta, sigma, delta, plus gamma when it is estimated
  s.k_params = k + 1 + (J - 3) + (chain.model == ModelKind::fbqror ? 1 : 0);
  s.aic = aic_value(s.loglik, s.k_params);
  s.bic = bic_value(s.loglik, s.k_params, s.n);
  return s;
}

struct CovariateEffect {
  std::string covariate;
  Eigen::VectorXd delta_prob;  // length J, sums to zero
};

struct EffectOptions {
  double value1 = 1.0;
  double value0 = 0.0;
  int thin = 1;
  std::vector<std::pair<std::string, double>> base_overrides;
};

/// Average change in predicted category probabilities when the covariate
/// moves from value0 to value1, averaged over the observed covariate rows and
/// over the post-burn-in draws.
inline CovariateEffect covariate_effect(const ChainOutput& chain,
                                        const OrdinalDataset& data,
                                        const std::string& covariate,
                                        const EffectOptions& opts = {}) {
  const auto pos = std::find(data.covariate_names.begin(), data.covariate_names.end(),
                             covariate);
  if (pos == data.covariate_names.end())
    throw std::invalid_argument("covariate_effect: unknown covariate '" + covariate + "'");
  const int col = static_cast<int>(pos - data.covariate_names.begin());
  const int k = chain.k, J = chain.J;
  const GammaBounds bounds = gamma_bounds(chain.quantile);
  const int thin = std::max(1, opts.thin);

  std::vector<int> override_cols;
  std::vector<double> override_vals;
  for (const auto& [name, value] : opts.base_overrides) {
    const auto it = std::find(data.covariate_names.begin(),
                              data.covariate_names.end(), name);
    if (it == data.covariate_names.end())
      throw std::invalid_argument("covariate_effect: unknown covariate '" + name + "'");
    override_cols.push_back(static_cast<int>(it - data.covariate_names.begin()));
    override_vals.push_back(value);
  }

  Eigen::VectorXd accum = Eigen::VectorXd::Zero(J);
  long used_draws = 0;
  Eigen::VectorXd x(k);
  for (int r = 0; r < chain.draws.rows(); r += thin) {
    const Eigen::VectorXd beta = chain.draws.row(r).head(k);
    const double sigma = chain.draws(r, k);
    const double gamma = chain.model == ModelKind::bqror ? 0.0 : chain.draws(r, k + 1);
    const auto mc = mixture_constants(chain.quantile, gamma, bounds);
    const GalParams std_gal(0.0, 1.0, mc.p, mc.alpha);
    CutpointSpec spec{chain.cut2, chain.draws.row(r).tail(J - 3)};
    const auto xi = delta_to_xi(spec, J);
    for (int i = 0; i < data.n(); ++i) {
      x = data.X.row(i);
      for (std::size_t o = 0; o < override_cols.size(); ++o)
        x(override_cols[o]) = override_vals[o];
      x(col) = opts.value1;
      const double xb1 = x.dot(beta);
      x(col) = opts.value0;
      const double xb0 = x.dot(beta);
      for (int j = 1; j <= J; ++j)
        accum(j - 1) += std::exp(category_log_prob(xb1, j, xi, sigma, std_gal)) -
                        std::exp(category_log_prob(xb0, j, xi, sigma, std_gal));
    }
    ++used_draws;
  }
  return {covariate, accum / (static_cast<double>(used_draws) * data.n())};
}

struct ModelComparison {
  std::vector<double> quantiles;
  // per quantile: model name -> (lnL, AIC, BIC)
  std::map<double, std::map<std::string, std::array<double, 3>>> cells;
  std::map<double, std::string> preferred_aic;  // "tie" when equal
  std::map<double, std::string> preferred_bic;
  std::string text;
};

/// Side-by-side comparison of fits on the same data; lower AIC/BIC is
/// preferred.  Summaries are grouped by quantile.
inline ModelComparison compare_models(const std::vector<FitSummary>& summaries) {
  if (summaries.size() < 2)
    throw std::invalid_argument("compare_models: need at least two summaries");
  for (const auto& s : summaries)
    if (s.n != summaries.front().n)
      throw std::invalid_argument("compare_models: summaries come from different n");

  ModelComparison cmp;
  std::vector<std::string> models;
  for (const auto& s : summaries) {
    if (std::find(cmp.quantiles.begin(), cmp.quantiles.end(), s.quantile) ==
        cmp.quantiles.end())
      cmp.quantiles.push_back(s.quantile);
    if (std::find(models.begin(), models.end(), s.model) == models.end())
      models.push_back(s.model);
    cmp.cells[s.quantile][s.model] = {s.loglik, s.aic, s.bic};
  }
  std::sort(cmp.quantiles.begin(), cmp.quantiles.end());

  for (const double q : cmp.quantiles) {
    const auto& row = cmp.cells[q];
    auto best = [&](int idx) -> std::string {
      std::string name;
      double best_v = math::pos_inf;
      bool tie = false;
      for (const auto& [m, v] : row) {
        if (v[idx] < best_v) {
          best_v = v[idx];
          name = m;
          tie = false;
        } else if (v[idx] == best_v) {
          tie = true;
        }
      }
      return tie ? "tie" : name;
    };
    if (row.size() >= 2) {
      cmp.preferred_aic[q] = best(1);
      cmp.preferred_bic[q] = best(2);
    }
  }

  std::ostringstream os;
  os << "model comparison (lnL, AIC, BIC); lower AIC/BIC preferred\n";
  os << "quantiles:";
  for (const double q : cmp.quantiles) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "  %22gth", 100 * q);
    os << buf;
  }
  os << '\n';
  for (const auto& m : models) {
    char name[32];
    std::snprintf(name, sizeof name, "%-9s", m.c_str());
    os << name;
    for (const double q : cmp.quantiles) {
      const auto it = cmp.cells[q].find(m);
      if (it == cmp.cells[q].end()) {
        os << "  " << std::string(24, ' ');
        continue;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "  (%8.1f, %7.1f, %7.1f)", it->second[0],
                    it->second[1], it->second[2]);
      os << buf;
    }
    os << '\n';
  }
  for (const double q : cmp.quantiles) {
    if (!cmp.preferred_aic.count(q)) continue;
    char buf[128];
    std::snprintf(buf, sizeof buf, "p0=%g: AIC prefers %s; BIC prefers %s\n", q,
                  cmp.preferred_aic[q].c_str(), cmp.preferred_bic[q].c_str());
    os << buf;
  }
  cmp.text = os.str();
  return cmp;
}

}  // namespace galor
