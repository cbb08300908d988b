#pragma once

#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trapo/errors.hpp"

namespace trapo {

/// Probability vector over a finite alphabet. Entries are stored linearly
/// (not in log space) so that exact zeros keep their meaning; all divergence
/// code below guards zero entries explicitly.
class Categorical {
 public:
  static constexpr double kSumTol = 1e-9;

  /// Validates on construction: size >= 1, entries >= 0, sum within kSumTol
  /// of 1. With renormalize = true an off-simplex vector is rescaled by its
  /// sum instead of rejected (entries must still be nonnegative).
  explicit Categorical(std::vector<double> probs, bool renormalize = false)
      : probs_(std::move(probs)) {
    if (probs_.empty()) throw DomainError("categorical: alphabet size must be >= 1");
    double sum = 0.0;
    for (double v : probs_) {
      if (!(v >= 0.0)) throw DomainError("categorical: negative or NaN entry");
      sum += v;
    }
    if (renormalize) {
      if (sum <= 0.0) throw DomainError("categorical: cannot renormalize zero vector");
      for (double& v : probs_) v /= sum;
    } else if (std::abs(sum - 1.0) > kSumTol) {
      throw DomainError("categorical: entries sum to " + std::to_string(sum) + ", not 1");
    }
  }

  static Categorical uniform(std::size_t n) {
    return Categorical(std::vector<double>(n, 1.0 / static_cast<double>(n)), true);
  }

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const Categorical& o) const { return probs_ == o.probs_; }

 private:
  std::vector<double> probs_;
};

inline void require_same_alphabet(const Categorical& p, const Categorical& q) {
  if (p.size() != q.size())
    throw AlphabetMismatch("alphabet sizes differ: " + std::to_string(p.size()) + " vs " +
                           std::to_string(q.size()));
}

/// Forward KL divergence KL(p || q) = sum_c p(c) log(p(c)/q(c)).
/// Mode-covering: finite only when q covers the support of p.
inline double forward_kl(const Categorical& p, const Categorical& q) {
  require_same_alphabet(p, q);
  double acc = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) {
    if (p[c] == 0.0) continue;
    if (q[c] == 0.0)
      throw SupportMismatch("forward_kl: p has mass at symbol " + std::to_string(c) +
                            " where q is zero");
    acc += p[c] * std::log(p[c] / q[c]);
  }
  return acc;
}

/// Reverse KL divergence KL(q || p); mode-seeking counterpart of forward_kl.
inline double reverse_kl(const Categorical& p, const Categorical& q) {
  return forward_kl(q, p);
}

/// Piecewise per-symbol loss behind the trust-region objective:
///   ell_alpha(p) = -p/alpha + 1 - log(alpha)   for p <  alpha
///   ell_alpha(p) = -log(p)                     for p >= alpha
/// C1 at the knot: both branches give -log(alpha) and derivative -1/alpha.
/// Finite at p = 0 (the linear branch), which is what makes the composite
/// divergence below well defined off the support of q.
inline double ell_alpha(double p, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("ell_alpha: p must lie in [0,1]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ell_alpha: alpha must lie in (0,1]");
  if (p < alpha) return -p / alpha + 1.0 - std::log(alpha);
  return -std::log(p);
}

/// d/dp ell_alpha(p): -1/alpha below the knot, -1/p at and above it.
/// Equals -1/max(p, alpha) everywhere.
inline double ell_alpha_deriv(double p, double alpha) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("ell_alpha_deriv: p must lie in [0,1]");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ell_alpha_deriv: alpha must lie in (0,1]");
  return -1.0 / std::max(p, alpha);
}

/// Trust-region divergence D_alpha(p_expert || q) = sum_c p_expert(c) * ell_alpha(q(c)).
/// Finite for every q on the simplex, unlike forward KL.
inline double trsft_divergence(const Categorical& p_expert, const Categorical& q, double alpha) {
  require_same_alphabet(p_expert, q);
  double acc = 0.0;
  for (std::size_t c = 0; c < p_expert.size(); ++c) {
    if (p_expert[c] == 0.0) continue;
    acc += p_expert[c] * ell_alpha(q[c], alpha);
  }
  return acc;
}

/// Total variation distance (1/2) * sum |p - q|; convenience for solver tests.
inline double total_variation(const Categorical& p, const Categorical& q) {
  require_same_alphabet(p, q);
  double acc = 0.0;
  for (std::size_t c = 0; c < p.size(); ++c) acc += std::abs(p[c] - q[c]);
  return 0.5 * acc;
}

// --- plain-text numeric-array serialization (CLI distribution files) ---
//
// Format: whitespace- or comma-separated decimal numbers; '#' starts a
// comment that runs to end of line.

inline Categorical read_categorical(std::istream& in, bool renormalize = false) {
  std::vector<double> vals;
  std::string tok;
  char ch;
  auto flush = [&] {
    if (tok.empty()) return;
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw IoError("distribution file: bad number '" + tok + "'");
    vals.push_back(v);
    tok.clear();
  };
  while (in.get(ch)) {
    if (ch == '#') {
      flush();
      while (in.get(ch) && ch != '\n') {
      }
    } else if (ch == ',' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      tok.push_back(ch);
    }
  }
  flush();
  if (vals.empty()) throw IoError("distribution file: no numbers found");
  return Categorical(std::move(vals), renormalize);
}

inline Categorical parse_categorical(const std::string& text, bool renormalize = false) {
  std::istringstream in(text);
  return read_categorical(in, renormalize);
}

inline void write_categorical(std::ostream& out, const Categorical& p) {
  char buf[40];
  for (std::size_t c = 0; c < p.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%.17g", p[c]);
    out << (c ? " " : "") << buf;
  }
  out << "\n";
}

}  // namespace trapo
