#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "trapo/dist.hpp"
#include "trapo/errors.hpp"

namespace trapo {

/// Endpoint of trust-region training against expert p: the policy q* that
/// minimizes trsft_divergence(p, q, alpha) over the simplex.
///
/// q* keeps the symbols with p(c) > alpha*lambda, rescaled by 1/lambda, and
/// zeroes the rest. lambda is pinned by the fixed-point equation
/// lambda = kept_mass(p, alpha, lambda). Because kept_mass is a step
/// function of lambda, two shapes occur:
///   - interior: some constancy interval of kept_mass contains its own
///     value, and lambda equals that value exactly;
///   - jump: the diagonal is crossed only at a breakpoint; symbols sitting
///     exactly on the threshold (p(c) = alpha*lambda) absorb the leftover
///     probability, each receiving at most alpha.
struct FixedPointSolution {
  double lambda = 0.0;
  std::vector<std::size_t> kept;      // S(lambda): p(c) > alpha*lambda
  std::vector<std::size_t> boundary;  // p(c) == alpha*lambda (within tolerance)
  double residual_mass = 0.0;         // q* mass carried by boundary symbols
  Categorical optimal;
  /// True when lambda = kept_mass(lambda) held with lambda strictly inside
  /// (0,1). Reported per instance: with alpha below the smallest mass the
  /// fixed point sits at lambda = 1, and some instances only cross at a jump.
  bool strict_interior = false;
};

/// Mass of the symbols kept at threshold alpha*lambda:
/// sum of p(c) over { c : p(c) > alpha*lambda }.
/// Non-increasing step function of lambda; jumps exactly at lambda = p(c)/alpha.
inline double kept_mass(const Categorical& p, double alpha, double lambda) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("kept_mass: alpha must lie in (0,1]");
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("kept_mass: lambda must lie in (0,1]");
  double acc = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c)
    if (p[c] > alpha * lambda) acc += p[c];
  return acc;
}

namespace detail {

// Relative tolerance for detecting p(c) == alpha*lambda ties. The solver's
// breakpoints are quotients of input masses, so exact equality is the common
// case; the tolerance only absorbs rounding in alpha*lambda.
constexpr double kTieTol = 1e-12;

inline bool tie_equal(double mass, double threshold) {
  return std::abs(mass - threshold) <= kTieTol * std::max(1.0, std::abs(threshold));
}

}  // namespace detail

/// Solves the lambda fixed point by exact breakpoint scan.
///
/// Candidate breakpoints are b = p(c)/alpha. Between consecutive breakpoints
/// kept_mass is constant, so the scan checks each constancy interval for a
/// fixed point and otherwise locates the jump the diagonal crosses. No
/// iterative root finding: bisection can stall on the discontinuities.
inline FixedPointSolution solve_lambda(const Categorical& p_in, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("solve_lambda: alpha must lie in (0,1]");
  // Work on an exactly normalized copy so the total mass is 1 up to one
  // rounding, keeping the interval scan's m <= 1 test meaningful.
  const Categorical p(p_in.probs(), /*renormalize=*/true);
  const std::size_t n = p.size();

  // Ascending breakpoints inside (0, 1]; values above 1 never matter because
  // the diagonal cannot cross there.
  std::vector<double> breaks;
  breaks.reserve(n);
  for (std::size_t c = 0; c < n; ++c)
    if (p[c] > 0.0) breaks.push_back(p[c] / alpha);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  while (!breaks.empty() && breaks.back() > 1.0) breaks.pop_back();

  auto mass_above = [&](double lambda) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c)
      if (p[c] > alpha * lambda && !detail::tie_equal(p[c], alpha * lambda)) acc += p[c];
    return acc;
  };
  auto finish = [&](double lambda, bool strict) {
    FixedPointSolution s{.lambda = lambda, .optimal = Categorical::uniform(1)};
    double kept_sum = 0.0;
    const double thr = alpha * lambda;
    for (std::size_t c = 0; c < n; ++c) {
      if (p[c] > 0.0 && detail::tie_equal(p[c], thr)) {
        s.boundary.push_back(c);
      } else if (p[c] > thr) {
        s.kept.push_back(c);
        kept_sum += p[c];
      }
    }
    std::vector<double> q(n, 0.0);
    for (std::size_t c : s.kept) q[c] = p[c] / lambda;
    s.residual_mass = std::max(0.0, 1.0 - kept_sum / lambda);
    if (!s.boundary.empty() && s.residual_mass > 0.0) {
      // The KKT conditions let tied symbols carry any mass in [0, alpha];
      // a uniform split is deterministic and always feasible because the
      // jump the diagonal crossed has height #boundary * alpha * lambda.
      double each = s.residual_mass / static_cast<double>(s.boundary.size());
      for (std::size_t c : s.boundary) q[c] = each;
    } else {
      s.residual_mass = 0.0;
    }
    s.optimal = Categorical(std::move(q), /*renormalize=*/true);
    s.strict_interior = strict;
    return s;
  };

  // Interval scan. Interval j spans [breaks[j-1], breaks[j]) with the
  // convention breaks[-1] -> 0 and a final interval reaching 1 inclusive.
  double lo = 0.0;
  for (std::size_t j = 0; j <= breaks.size(); ++j) {
    const double hi = (j < breaks.size()) ? breaks[j] : 1.0;
    if (lo > 1.0) break;
    // kept_mass is constant on [lo, hi); evaluate just inside.
    const double m = mass_above(lo == 0.0 ? std::min(hi, 1.0) * 0.5 : lo);
    const bool in_interval = (m > lo || (m == lo && j > 0)) &&
                             (m < hi || (j == breaks.size() && m <= 1.0 + 1e-12));
    if (m > 0.0 && in_interval && m <= 1.0 + 1e-12) {
      return finish(std::min(m, 1.0), /*strict=*/m < 1.0);
    }
    lo = hi;
  }

  // No interval contained its own mass: the diagonal is crossed at a jump.
  // Find the first breakpoint b with kept_mass(b) < b <= kept_mass(b-).
  for (double b : breaks) {
    const double after = mass_above(b);
    double tied = 0.0;
    for (std::size_t c = 0; c < n; ++c)
      if (p[c] > 0.0 && detail::tie_equal(p[c], alpha * b)) tied += p[c];
    const double before = after + tied;
    if (after < b && b <= before) {
      return finish(b, /*strict=*/false);
    }
  }
  throw Error("solve_lambda: no fixed point located (unreachable for valid input)");
}

/// Euclidean projection onto the probability simplex (sort-based algorithm).
inline std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  std::size_t rho = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) {
      rho = i + 1;
      tau = t;
    }
  }
  (void)rho;
  for (double& x : v) x = std::max(0.0, x - tau);
  return v;
}

struct BruteForceOptions {
  int max_iters = 200000;
  /// Initial trial step 0.1/alpha, halved by the descent safeguard below
  /// whenever it overshoots (required for small alpha, where the objective's
  /// curvature ~ 1/alpha^2 makes the raw step unstable).
  double step_scale = 0.1;
  double tol = 1e-8;  // on the gradient-mapping norm
  bool throw_on_failure = true;
};

/// Independent oracle for solve_lambda: minimizes trsft_divergence(p, q, alpha)
/// over the simplex by projected gradient descent with a backtracking
/// safeguard. The objective is convex and C1, so the endpoint is global.
inline Categorical brute_force_endpoint(const Categorical& p, double alpha,
                                        const BruteForceOptions& opt = {}) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("brute_force_endpoint: alpha must lie in (0,1]");
  const std::size_t n = p.size();
  std::vector<double> q(n, 1.0 / static_cast<double>(n));

  auto objective = [&](const std::vector<double>& x) {
    double acc = 0.0;
    for (std::size_t c = 0; c < n; ++c)
      if (p[c] > 0.0) acc += p[c] * ell_alpha(std::min(x[c], 1.0), alpha);
    return acc;
  };
  auto gradient = [&](const std::vector<double>& x, std::vector<double>& g) {
    for (std::size_t c = 0; c < n; ++c)
      g[c] = p[c] * ell_alpha_deriv(std::min(x[c], 1.0), alpha);
  };

  std::vector<double> grad(n), trial(n);
  double f = objective(q);
  double step = opt.step_scale / alpha;
  for (int it = 0; it < opt.max_iters; ++it) {
    gradient(q, grad);
    // Backtrack until the projected step decreases the objective.
    double f_trial = 0.0;
    double s = step;
    for (;;) {
      for (std::size_t c = 0; c < n; ++c) trial[c] = q[c] - s * grad[c];
      trial = project_to_simplex(std::move(trial));
      f_trial = objective(trial);
      if (f_trial <= f + 1e-18 || s < 1e-18) break;
      s *= 0.5;
    }
    // Gradient mapping at the accepted step.
    double gm = 0.0;
    for (std::size_t c = 0; c < n; ++c) {
      double d = (q[c] - trial[c]) / s;
      gm += d * d;
    }
    gm = std::sqrt(gm);
    q.swap(trial);
    f = f_trial;
    step = std::min(opt.step_scale / alpha, s * 2.0);  // let the step recover
    if (gm <= opt.tol) return Categorical(std::move(q), /*renormalize=*/true);
  }
  if (opt.throw_on_failure)
    throw NonConvergence("brute_force_endpoint: gradient mapping above tolerance after " +
                         std::to_string(opt.max_iters) + " iterations");
  return Categorical(std::move(q), /*renormalize=*/true);
}

}  // namespace trapo
