#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "qres/linalg.hpp"

namespace qres {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Reflection-based Nelder-Mead simplex minimizer. Stops when the spread of
// the simplex values drops below `tol` or after `max_iter` iterations.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& x0,
                                 const std::vector<double>& step, int max_iter = 200,
                                 double tol = 1e-9) {
  const std::size_t n = x0.size();
  const double alpha = 1.0, gamma = 2.0, beta = 0.5, delta = 0.5;

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step[i];
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> idx(n + 1);
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = idx.front(), worst = idx.back(), second_worst = idx[n - 1];
    if (vals[worst] - vals[best] < tol) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t c = 0; c < n; ++c) centroid[c] += pts[i][c];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](double factor) {
      std::vector<double> x(n);
      for (std::size_t c = 0; c < n; ++c) x[c] = centroid[c] + factor * (centroid[c] - pts[worst][c]);
      return x;
    };

    const std::vector<double> reflected = blend(alpha);
    const double fr = f(reflected);
    if (fr < vals[idx[0]]) {
      const std::vector<double> expanded = blend(gamma);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
    } else if (fr < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = fr;
    } else {
      const std::vector<double> contracted = blend(fr < vals[worst] ? beta : -beta);
      const double fc = f(contracted);
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = contracted;
        vals[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t c = 0; c < n; ++c)
            pts[i][c] = pts[best][c] + delta * (pts[i][c] - pts[best][c]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (vals[i] < vals[best]) best = i;
  return {pts[best], vals[best], iter};
}

// Qubit measurement basis from Bloch angles: columns are
// (cos θ/2, e^{iφ} sin θ/2) and (-e^{-iφ} sin θ/2, cos θ/2).
inline Matrix bloch_unitary(double theta, double phi) {
  Matrix u(2, 2);
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  u(0, 0) = c;
  u(1, 0) = std::polar(s, phi);
  u(0, 1) = -std::polar(s, -phi);
  u(1, 1) = c;
  return u;
}

// d x d unitary as a product of Givens rotations with phases over all index
// pairs; params holds (theta, phi) per pair, 2 * d(d-1)/2 values total.
inline Matrix givens_unitary(int d, const std::vector<double>& params) {
  Matrix u = Matrix::Identity(d, d);
  std::size_t p = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double theta = params.at(p++), phi = params.at(p++);
      Matrix g = Matrix::Identity(d, d);
      const double c = std::cos(theta), s = std::sin(theta);
      g(i, i) = c;
      g(j, j) = c;
      g(i, j) = -std::polar(s, -phi);
      g(j, i) = std::polar(s, phi);
      u = g * u;
    }
  return u;
}

inline std::size_t givens_param_count(int d) {
  return static_cast<std::size_t>(d) * (d - 1);
}

}  // namespace qres
