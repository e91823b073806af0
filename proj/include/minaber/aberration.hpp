#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "minaber/design.hpp"
#include "minaber/errors.hpp"
#include "minaber/indicator.hpp"

namespace minaber {

// How multi-indices are grouped into wordlength-pattern entries.
//   alpha:  by ||t||_0 (number of active factors)
//   beta:   by ||t||_1 (polynomial degree)
//   degree_then_cardinality:  by (||t||_1, ||t||_0), lexicographic
//   cardinality_then_degree:  by (||t||_0, ||t||_1), lexicographic
enum class Scheme { alpha, beta, degree_then_cardinality, cardinality_then_degree };

inline std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::alpha: return "alpha";
    case Scheme::beta: return "beta";
    case Scheme::degree_then_cardinality: return "deg-card";
    case Scheme::cardinality_then_degree: return "card-deg";
  }
  return "?";
}

// One entry class: the (||t||_0, ||t||_1) constraint it sums over.
// A value of -1 leaves that norm unconstrained.
struct WlpClass {
  int norm0 = -1;
  int norm1 = -1;

  friend bool operator==(const WlpClass& a, const WlpClass& b) {
    return a.norm0 == b.norm0 && a.norm1 == b.norm1;
  }
};

// Ordered vector of aliasing sums: entry j is the sum of (b_t/b_0)^2
// over the multi-indices in classes[j].  The t = 0 term is excluded in
// every scheme.
struct WordlengthPattern {
  Scheme scheme = Scheme::beta;
  std::vector<double> values;
  std::vector<WlpClass> classes;
};

namespace detail {

inline void require_nonempty(const CoefficientTable& coeffs) {
  if (coeffs.b0() <= 1e-15) {
    throw EmptyDesignError("wordlength pattern of an empty design");
  }
}

}  // namespace detail

// alpha_i = sum over ||t||_0 = i of (b_t/b_0)^2, for i = 1..k.
inline WordlengthPattern alpha_wlp(const CoefficientTable& coeffs) {
  detail::require_nonempty(coeffs);
  const DesignSpace& space = coeffs.space;
  const int k = space.num_factors();
  WordlengthPattern wlp;
  wlp.scheme = Scheme::alpha;
  wlp.values.assign(k, 0.0);
  wlp.classes.resize(k);
  for (int i = 0; i < k; ++i) wlp.classes[i] = {i + 1, -1};

  const double b0 = coeffs.b0();
  std::vector<int> t(k, 0);
  long long r = 0;
  do {
    const int n0 = active_factors(t);
    if (n0 > 0) {
      const double ratio = coeffs.entries[r] / b0;
      wlp.values[n0 - 1] += ratio * ratio;
    }
    ++r;
  } while (space.next_point(t));
  return wlp;
}

// beta_i = sum over ||t||_1 = i of (b_t/b_0)^2, for i = 1..K.
inline WordlengthPattern beta_wlp(const CoefficientTable& coeffs) {
  detail::require_nonempty(coeffs);
  const DesignSpace& space = coeffs.space;
  const int K = space.max_degree();
  WordlengthPattern wlp;
  wlp.scheme = Scheme::beta;
  wlp.values.assign(K, 0.0);
  wlp.classes.resize(K);
  for (int i = 0; i < K; ++i) wlp.classes[i] = {-1, i + 1};

  const double b0 = coeffs.b0();
  std::vector<int> t(space.num_factors(), 0);
  long long r = 0;
  do {
    const int n1 = polynomial_degree(t);
    if (n1 > 0) {
      const double ratio = coeffs.entries[r] / b0;
      wlp.values[n1 - 1] += ratio * ratio;
    }
    ++r;
  } while (space.next_point(t));
  return wlp;
}

// Groups by the joint class (||t||_1, ||t||_0), ordered lexicographically
// by the scheme's key: degree first for degree_then_cardinality, factor
// count first for cardinality_then_degree.  Classes cover every pair
// realizable on the space except (0, 0), including classes whose sum is
// zero for the particular design.
inline WordlengthPattern custom_wlp(const CoefficientTable& coeffs,
                                    Scheme scheme) {
  if (scheme == Scheme::alpha) return alpha_wlp(coeffs);
  if (scheme == Scheme::beta) return beta_wlp(coeffs);
  detail::require_nonempty(coeffs);
  const DesignSpace& space = coeffs.space;
  const double b0 = coeffs.b0();

  // key -> summed value; key orders the classes.
  std::map<std::pair<int, int>, double> sums;
  std::vector<int> t(space.num_factors(), 0);
  long long r = 0;
  do {
    const int n0 = active_factors(t);
    const int n1 = polynomial_degree(t);
    if (n0 > 0) {
      const auto key = (scheme == Scheme::degree_then_cardinality)
                           ? std::make_pair(n1, n0)
                           : std::make_pair(n0, n1);
      const double ratio = coeffs.entries[r] / b0;
      sums[key] += ratio * ratio;
    }
    ++r;
  } while (space.next_point(t));

  WordlengthPattern wlp;
  wlp.scheme = scheme;
  for (const auto& [key, value] : sums) {
    wlp.values.push_back(value);
    if (scheme == Scheme::degree_then_cardinality) {
      wlp.classes.push_back({key.second, key.first});
    } else {
      wlp.classes.push_back({key.first, key.second});
    }
  }
  return wlp;
}

// Index of the first entry above tol, reported as that entry's norm
// (||t||_0 for alpha, ||t||_1 for beta, 1-based position otherwise);
// nullopt means every entry vanishes ("full resolution").
inline std::optional<int> resolution(const WordlengthPattern& wlp,
                                     double tol = 1e-6) {
  for (size_t i = 0; i < wlp.values.size(); ++i) {
    if (wlp.values[i] > tol) {
      switch (wlp.scheme) {
        case Scheme::alpha: return wlp.classes[i].norm0;
        case Scheme::beta: return wlp.classes[i].norm1;
        default: return static_cast<int>(i) + 1;
      }
    }
  }
  return std::nullopt;
}

// Largest t with alpha_1 .. alpha_t all below tol: the design is an
// orthogonal array of exactly this strength.
inline int strength(const CoefficientTable& coeffs, double tol = 1e-6) {
  const WordlengthPattern alpha = alpha_wlp(coeffs);
  int t = 0;
  while (t < static_cast<int>(alpha.values.size()) &&
         alpha.values[t] <= tol) {
    ++t;
  }
  return t;
}

enum class WlpOrder { less, equal, greater };

// Lexicographic comparison entry by entry; differences within tol are
// ties.  Smaller means less aberration.
inline WlpOrder compare_wlp(const WordlengthPattern& a,
                            const WordlengthPattern& b, double tol = 1e-6) {
  if (a.scheme != b.scheme || a.values.size() != b.values.size()) {
    throw ShapeError("comparing wordlength patterns of different schemes");
  }
  for (size_t i = 0; i < a.values.size(); ++i) {
    const double d = a.values[i] - b.values[i];
    if (d < -tol) return WlpOrder::less;
    if (d > tol) return WlpOrder::greater;
  }
  return WlpOrder::equal;
}

}  // namespace minaber
