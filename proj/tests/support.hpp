#pragma once

#include "modsplit/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

namespace testing {

using modsplit::Vector;

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index n, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

// Sup-norm difference over the larger sup norm; 0 when both vanish.
inline double rel_diff(const Vector& a, const Vector& b) {
  const double scale = std::max(a.lpNorm<Eigen::Infinity>(), b.lpNorm<Eigen::Infinity>());
  const double d = (a - b).lpNorm<Eigen::Infinity>();
  return scale == 0.0 ? d : d / scale;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? std::abs(a - b) : std::abs(a - b) / scale;
}

// Five-point central differences.
inline Vector central_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h) {
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const auto at = [&](double s) {
      Vector y = x;
      y[i] += s * h;
      return f(y);
    };
    g[i] = (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) / (12.0 * h);
  }
  return g;
}

}  // namespace testing
