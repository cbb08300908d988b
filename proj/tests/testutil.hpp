#pragma once

// Shared helpers for the unit and acceptance suites: random simplex points,
// finite-difference oracles, and small numeric utilities. Everything here is
// independent of the implementation paths it is used to check.

#include <cmath>
#include <functional>
#include <vector>

#include "trapo/dist.hpp"
#include "trapo/rng.hpp"

namespace testutil {

inline std::vector<double> random_simplex(trapo::Rng& rng, std::size_t n) {
  // Exponential spacings give a uniform Dirichlet(1,...,1) draw.
  std::vector<double> v(n);
  double sum = 0.0;
  for (auto& x : v) {
    double u = rng.next_double();
    while (u <= 0.0) u = rng.next_double();
    x = -std::log(u);
    sum += x;
  }
  for (auto& x : v) x /= sum;
  return v;
}

inline trapo::Categorical random_categorical(trapo::Rng& rng, std::size_t n) {
  return trapo::Categorical(random_simplex(rng, n), /*renormalize=*/true);
}

/// Sparse random simplex point: roughly `zero_frac` of the entries are
/// exactly zero (at least one entry stays positive).
inline trapo::Categorical random_sparse_categorical(trapo::Rng& rng, std::size_t n,
                                                    double zero_frac) {
  std::vector<double> v = random_simplex(rng, n);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (rng.next_double() < zero_frac) v[i] = 0.0;
  return trapo::Categorical(std::move(v), /*renormalize=*/true);
}

/// Central finite difference of a scalar function of one coordinate.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want) {
  double scale = std::max({1e-12, std::abs(got), std::abs(want)});
  return std::abs(got - want) / scale;
}

}  // namespace testutil
