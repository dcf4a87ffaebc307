#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace galor::math {

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
};

/// Nelder-Mead minimization (standard reflection/expansion/contraction
/// coefficients).  Small dimensions only; the callers optimize over 1-3
/// parameters.
inline NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                                    const Eigen::VectorXd& start, double step,
                                    double ftol = 1e-10, double xtol = 1e-9,
                                    int max_evals = 20000) {
  const int d = static_cast<int>(start.size());
  std::vector<Eigen::VectorXd> pts(d + 1, start);
  std::vector<double> vals(d + 1);
  NelderMeadResult res;
  for (int i = 0; i < d; ++i) pts[i + 1](i) += step;
  for (int i = 0; i <= d; ++i) vals[i] = f(pts[i]);
  res.evaluations = d + 1;

  auto order = [&] {
    std::vector<int> idx(d + 1);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2(d + 1);
    std::vector<double> v2(d + 1);
    for (int i = 0; i <= d; ++i) {
      p2[i] = pts[idx[i]];
      v2[i] = vals[idx[i]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  while (res.evaluations < max_evals) {
    order();
    double spread = 0.0;
    for (int i = 1; i <= d; ++i) spread = std::max(spread, (pts[i] - pts[0]).norm());
    if (std::abs(vals[d] - vals[0]) < ftol * (1.0 + std::abs(vals[0])) && spread < xtol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < d; ++i) centroid += pts[i];
    centroid /= d;

    const Eigen::VectorXd xr = centroid + (centroid - pts[d]);
    const double fr = f(xr);
    ++res.evaluations;
    if (fr < vals[0]) {
      const Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[d]);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe < fr) {
        pts[d] = xe;
        vals[d] = fe;
      } else {
        pts[d] = xr;
        vals[d] = fr;
      }
    } else if (fr < vals[d - 1]) {
      pts[d] = xr;
      vals[d] = fr;
    } else {
      const bool outside = fr < vals[d];
      const Eigen::VectorXd xc =
          centroid + 0.5 * ((outside ? xr : pts[d]) - centroid);
      const double fc = f(xc);
      ++res.evaluations;
      if (fc < std::min(fr, vals[d])) {
        pts[d] = xc;
        vals[d] = fc;
      } else {  // shrink toward the best point
        for (int i = 1; i <= d; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          vals[i] = f(pts[i]);
          ++res.evaluations;
        }
      }
    }
  }
  order();
  res.x = pts[0];
  res.value = vals[0];
  return res;
}

/// Central finite-difference Hessian.
inline Eigen::MatrixXd fd_hessian(const std::function<double(const Eigen::VectorXd&)>& f,
                                  const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  const int d = static_cast<int>(x.size());
  Eigen::MatrixXd H(d, d);
  const double f0 = f(x);
  for (int i = 0; i < d; ++i) {
    Eigen::VectorXd xp = x, xm = x;
    xp(i) += h(i);
    xm(i) -= h(i);
    H(i, i) = (f(xp) - 2.0 * f0 + f(xm)) / (h(i) * h(i));
    for (int j = i + 1; j < d; ++j) {
      Eigen::VectorXd xpp = x, xpm = x, xmp = x, xmm = x;
      xpp(i) += h(i); xpp(j) += h(j);
      xpm(i) += h(i); xpm(j) -= h(j);
      xmp(i) -= h(i); xmp(j) += h(j);
      xmm(i) -= h(i); xmm(j) -= h(j);
      H(i, j) = H(j, i) =
          (f(xpp) - f(xpm) - f(xmp) + f(xmm)) / (4.0 * h(i) * h(j));
    }
  }
  return H;
}

}  // namespace galor::math
