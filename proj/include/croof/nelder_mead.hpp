#pragma once

// Derivative-free local minimization (Nelder-Mead simplex with the
// dimension-adaptive coefficients of Gao & Han).

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace croof {

struct NelderMeadOptions {
  double initial_step = 0.15;
  int max_iterations = 400;
  double f_tolerance = 1e-9;  // stop when max f - min f over the simplex falls below
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
};

template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, const NelderMeadOptions& opt = {}) {
  const int n = static_cast<int>(x0.size());
  const double dn = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dn;
  const double rho = 0.75 - 1.0 / (2.0 * dn);
  const double sigma = 1.0 - 1.0 / dn;

  NelderMeadResult res;
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) pts[i + 1][i] += opt.initial_step;
  for (int i = 0; i <= n; ++i) fv[i] = f(pts[i]);
  res.evaluations = n + 1;

  std::vector<int> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);
  auto blend = [&](std::vector<double>& out, double t) {
    // out = centroid + t * (centroid - worst)
    const auto& w = pts[order[n]];
    for (int j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - w[j]);
  };

  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    if (fv[order[n]] - fv[order[0]] <= opt.f_tolerance) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += pts[order[i]][j];
    for (auto& c : centroid) c /= dn;

    const int worst = order[n];
    const double f_best = fv[order[0]];
    const double f_second = fv[order[n - 1]];
    blend(xr, alpha);
    const double fr = f(xr);
    ++res.evaluations;
    if (fr < f_best) {
      blend(xe, alpha * gamma);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe < fr) {
        pts[worst] = xe;
        fv[worst] = fe;
      } else {
        pts[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < f_second) {
      pts[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    blend(xc, outside ? alpha * rho : -rho);
    const double fc = f(xc);
    ++res.evaluations;
    if (fc < (outside ? fr : fv[worst])) {
      pts[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    const auto best = pts[order[0]];
    for (int i = 1; i <= n; ++i) {
      auto& p = pts[order[i]];
      for (int j = 0; j < n; ++j) p[j] = best[j] + sigma * (p[j] - best[j]);
      fv[order[i]] = f(p);
    }
    res.evaluations += n;
  }
  const int b = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = pts[b];
  res.f = fv[b];
  res.iterations = it;
  return res;
}

}  // namespace croof
