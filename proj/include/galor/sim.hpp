#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "galor/math/normal.hpp"
#include "galor/ordinal.hpp"
#include "galor/random.hpp"

// Seedable generators for the two simulation designs: three U(0,1)
// covariates with a symmetric (standard logistic) error and cut-points
// (0,2,4), and the same covariates with a right-skewed (demeaned chi-square,
// 4 df) error and cut-points (0,3,6).

namespace galor {

struct SimulatedData {
  OrdinalDataset data;
  Eigen::VectorXd latent;
};

/// y_i = j iff xi_{j-1} < z_i <= xi_j; xi must be strictly increasing with
/// -inf / +inf endpoints.
inline Eigen::VectorXi discretize(const Eigen::VectorXd& z,
                                  const std::vector<double>& xi) {
  const int J = static_cast<int>(xi.size()) - 1;
  if (J < 1 || !std::isinf(xi.front()) || !std::isinf(xi.back()))
    throw std::invalid_argument("discretize: xi needs -inf/+inf endpoints");
  for (std::size_t j = 1; j < xi.size(); ++j)
    if (!(xi[j - 1] < xi[j]))
      throw std::invalid_argument("discretize: xi must be strictly increasing");
  Eigen::VectorXi y(z.size());
  for (int i = 0; i < z.size(); ++i) {
    int j = 1;
    while (z(i) > xi[j]) ++j;
    y(i) = j;
  }
  return y;
}

namespace detail {

template <class ErrorDraw>
SimulatedData generate_design(int n, RandomStream& rng, const Eigen::Vector3d& beta,
                              const std::vector<double>& xi, ErrorDraw&& draw_eps) {
  if (n < 50) throw std::invalid_argument("simulate: need n >= 50");
  const int J = static_cast<int>(xi.size()) - 1;
  for (int attempt = 0; attempt < 200; ++attempt) {
    SimulatedData out;
    out.data.X.resize(n, 3);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 3; ++j) out.data.X(i, j) = rng.uniform();
    out.latent.resize(n);
    for (int i = 0; i < n; ++i)
      out.latent(i) = out.data.X.row(i).dot(beta) + draw_eps(rng);
    out.data.y = discretize(out.latent, xi);
    out.data.J = J;
    out.data.covariate_names = {"x1", "x2", "x3"};
    bool complete = true;
    const auto counts = out.data.category_counts();
    for (int c : counts) complete &= c > 0;
    if (complete) return out;
    std::fprintf(stderr, "warning: simulated dataset missed a category; regenerating\n");
  }
  throw std::runtime_error("simulate: could not produce all categories");
}

}  // namespace detail

/// Symmetric design: z = 2 x1 - 3 x2 + 4 x3 + eps, eps standard logistic
/// (variance pi^2/3), cut-points (0, 2, 4), J = 4.
inline SimulatedData generate_study1(int n, RandomStream& rng) {
  return detail::generate_design(
      n, rng, {2.0, -3.0, 4.0}, {math::neg_inf, 0.0, 2.0, 4.0, math::pos_inf},
      [](RandomStream& r) {
        const double u = r.uniform();
        return std::log(u / (1.0 - u));
      });
}

/// Skewed design: z = 3 x1 - 7 x2 + 5 x3 + eps, eps = chisq(4) - 4,
/// cut-points (0, 3, 6), J = 4.
inline SimulatedData generate_study2(int n, RandomStream& rng) {
  return detail::generate_design(
      n, rng, {3.0, -7.0, 5.0}, {math::neg_inf, 0.0, 3.0, 6.0, math::pos_inf},
      [](RandomStream& r) {
        // chisq(4) = 2 * (E1 + E2)
        return 2.0 * (r.exponential() + r.exponential()) - 4.0;
      });
}

inline SimulatedData generate_study1(int n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return generate_study1(n, rng);
}

inline SimulatedData generate_study2(int n, std::uint64_t seed) {
  RandomStream rng(seed, 0);
  return generate_study2(n, rng);
}

}  // namespace galor
