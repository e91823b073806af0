#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "minaber/design.hpp"
#include "minaber/errors.hpp"
#include "minaber/indicator.hpp"

namespace minaber {

//======================================================================
// Geometric transform: slot l of the image takes its value from factor
// source_factor[l] of the preimage, with the level order reversed
// (x -> s-1-x) where reversed[l] is set.
struct GeomTransform {
  std::vector<int> source_factor;
  std::vector<std::uint8_t> reversed;

  static GeomTransform identity(int k) {
    GeomTransform g;
    g.source_factor.resize(k);
    std::iota(g.source_factor.begin(), g.source_factor.end(), 0);
    g.reversed.assign(k, 0);
    return g;
  }
};

// Combinatorial transform: like GeomTransform, but slot l's values are
// mapped by an arbitrary level permutation instead of only a reversal:
//   y_l = level_perm[l][ x[source_factor[l]] ].
struct CombTransform {
  std::vector<int> source_factor;
  std::vector<std::vector<int>> level_perm;
};

namespace detail {

inline void check_geom(const DesignSpace& target, const DesignSpace& source,
                       const GeomTransform& g) {
  const int k = target.num_factors();
  if (source.num_factors() != k ||
      static_cast<int>(g.source_factor.size()) != k ||
      static_cast<int>(g.reversed.size()) != k) {
    throw ShapeError("transform does not fit the design space");
  }
  std::vector<char> seen(k, 0);
  for (int l = 0; l < k; ++l) {
    const int i = g.source_factor[l];
    if (i < 0 || i >= k || seen[i]) {
      throw ShapeError("transform factor map is not a permutation");
    }
    seen[i] = 1;
    if (source.level_count(i) != target.level_count(l)) {
      throw ShapeError("transform maps factors with different level counts");
    }
  }
}

// All permutations p of 0..k-1 with source_levels[p[l]] == target_levels[l],
// in lexicographic order.
inline std::vector<std::vector<int>> level_matching_permutations(
    const std::vector<int>& target_levels,
    const std::vector<int>& source_levels) {
  const int k = static_cast<int>(target_levels.size());
  std::vector<std::vector<int>> result;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int l = 0; l < k && ok; ++l) {
      ok = source_levels[p[l]] == target_levels[l];
    }
    if (ok) result.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return result;
}

// Ranks of the transformed runs, sorted: the multiset fingerprint of
// apply_geom(design, g) without materializing the Design.
inline std::vector<long long> transformed_ranks(const Design& design,
                                                const DesignSpace& target,
                                                const std::vector<int>& perm,
                                                unsigned reversal_mask) {
  const int k = target.num_factors();
  std::vector<long long> ranks;
  ranks.reserve(design.runs().size());
  std::vector<int> y(k);
  for (const Run& x : design.runs()) {
    for (int l = 0; l < k; ++l) {
      const int v = x[perm[l]];
      y[l] = (reversal_mask >> l & 1u) ? target.level_count(l) - 1 - v : v;
    }
    ranks.push_back(target.rank(y));
  }
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

}  // namespace detail

inline Design apply_geom(const Design& design, const GeomTransform& g) {
  const DesignSpace& src = design.space();
  const int k = src.num_factors();
  if (static_cast<int>(g.source_factor.size()) != k ||
      static_cast<int>(g.reversed.size()) != k) {
    throw ShapeError("transform does not fit the design space");
  }
  for (int i : g.source_factor) {
    if (i < 0 || i >= k) {
      throw ShapeError("transform factor map is not a permutation");
    }
  }
  std::vector<int> levels(k);
  for (int l = 0; l < k; ++l) levels[l] = src.level_count(g.source_factor[l]);
  DesignSpace target(levels);
  detail::check_geom(target, src, g);

  std::vector<Run> runs;
  runs.reserve(design.runs().size());
  for (const Run& x : design.runs()) {
    Run y(k);
    for (int l = 0; l < k; ++l) {
      const int v = x[g.source_factor[l]];
      y[l] = g.reversed[l] ? levels[l] - 1 - v : v;
    }
    runs.push_back(std::move(y));
  }
  return Design(std::move(target), std::move(runs));
}

inline Design apply_comb(const Design& design, const CombTransform& c) {
  const DesignSpace& src = design.space();
  const int k = src.num_factors();
  if (static_cast<int>(c.source_factor.size()) != k ||
      static_cast<int>(c.level_perm.size()) != k) {
    throw ShapeError("transform does not fit the design space");
  }
  std::vector<int> levels(k);
  std::vector<char> seen(k, 0);
  for (int l = 0; l < k; ++l) {
    const int i = c.source_factor[l];
    if (i < 0 || i >= k || seen[i]) {
      throw ShapeError("transform factor map is not a permutation");
    }
    seen[i] = 1;
    levels[l] = src.level_count(i);
    const std::vector<int>& perm = c.level_perm[l];
    if (static_cast<int>(perm.size()) != levels[l]) {
      throw ShapeError("level permutation does not fit the factor");
    }
    std::vector<char> hit(levels[l], 0);
    for (int v : perm) {
      if (v < 0 || v >= levels[l] || hit[v]) {
        throw ShapeError("level map is not a permutation");
      }
      hit[v] = 1;
    }
  }
  DesignSpace target(levels);
  std::vector<Run> runs;
  runs.reserve(design.runs().size());
  for (const Run& x : design.runs()) {
    Run y(k);
    for (int l = 0; l < k; ++l) y[l] = c.level_perm[l][x[c.source_factor[l]]];
    runs.push_back(std::move(y));
  }
  return Design(std::move(target), std::move(runs));
}

// Searches all level-count-respecting factor permutations and reversal
// vectors for a transform g with apply_geom(B, g) == A as a multiset.
inline std::optional<GeomTransform> geom_isomorphic(const Design& A,
                                                    const Design& B) {
  std::vector<int> la = A.space().levels(), lb = B.space().levels();
  {
    std::vector<int> sa = la, sb = lb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      throw ShapeError("designs live on incompatible spaces");
    }
  }
  if (A.run_count() != B.run_count()) return std::nullopt;

  const int k = A.space().num_factors();
  const std::vector<long long> target = A.sorted_run_ranks();
  for (const std::vector<int>& perm :
       detail::level_matching_permutations(la, lb)) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      if (detail::transformed_ranks(B, A.space(), perm, mask) == target) {
        GeomTransform g;
        g.source_factor = perm;
        g.reversed.resize(k);
        for (int l = 0; l < k; ++l) g.reversed[l] = (mask >> l) & 1u;
        return g;
      }
    }
  }
  return std::nullopt;
}

// Coefficient-space isomorphism test: with A = apply_geom(B, g), the
// coefficient tables satisfy
//   bA_t = prod_l (-1)^(reversed[l] * t_l) * bB_u,  u[source_factor[l]] = t_l.
// Returns true when the identity holds for every multi-index within tol.
inline bool theorem31_check(const CoefficientTable& cA,
                            const CoefficientTable& cB,
                            const GeomTransform& g, double tol = 1e-9) {
  detail::check_geom(cA.space, cB.space, g);
  const DesignSpace& space = cA.space;
  const int k = space.num_factors();
  std::vector<int> t(k, 0), u(k, 0);
  long long r = 0;
  do {
    int sign = 1;
    for (int l = 0; l < k; ++l) {
      u[g.source_factor[l]] = t[l];
      if (g.reversed[l] && (t[l] & 1)) sign = -sign;
    }
    const double expected = sign * cB.entries[cB.space.rank(u)];
    if (std::abs(cA.entries[r] - expected) > tol) return false;
    ++r;
  } while (space.next_point(t));
  return true;
}

// Searches factor permutations and arbitrary per-factor level
// permutations for a transform c with apply_comb(B, c) == A.
inline std::optional<CombTransform> comb_isomorphic(const Design& A,
                                                    const Design& B) {
  std::vector<int> la = A.space().levels(), lb = B.space().levels();
  {
    std::vector<int> sa = la, sb = lb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) {
      throw ShapeError("designs live on incompatible spaces");
    }
  }
  if (A.run_count() != B.run_count()) return std::nullopt;

  const int k = A.space().num_factors();
  const std::vector<long long> target = A.sorted_run_ranks();

  for (const std::vector<int>& perm :
       detail::level_matching_permutations(la, lb)) {
    // Odometer over per-slot level permutations, each in lex order.
    std::vector<std::vector<std::vector<int>>> choices(k);
    std::vector<size_t> pick(k, 0);
    for (int l = 0; l < k; ++l) {
      std::vector<int> p(la[l]);
      std::iota(p.begin(), p.end(), 0);
      do {
        choices[l].push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    while (true) {
      std::vector<long long> ranks;
      ranks.reserve(B.runs().size());
      std::vector<int> y(k);
      for (const Run& x : B.runs()) {
        for (int l = 0; l < k; ++l) y[l] = choices[l][pick[l]][x[perm[l]]];
        ranks.push_back(A.space().rank(y));
      }
      std::sort(ranks.begin(), ranks.end());
      if (ranks == target) {
        CombTransform c;
        c.source_factor = perm;
        c.level_perm.resize(k);
        for (int l = 0; l < k; ++l) c.level_perm[l] = choices[l][pick[l]];
        return c;
      }
      int l = k - 1;
      while (l >= 0 && ++pick[l] == choices[l].size()) pick[l--] = 0;
      if (l < 0) break;
    }
  }
  return std::nullopt;
}

// Lexicographically smallest sorted run-rank vector over the whole
// transform group: a complete invariant for geometric isomorphism.
inline std::vector<long long> canonical_geometric_ranks(const Design& design) {
  const DesignSpace& space = design.space();
  const int k = space.num_factors();
  std::optional<std::vector<long long>> best;
  for (const std::vector<int>& perm :
       detail::level_matching_permutations(space.levels(), space.levels())) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<long long> ranks =
          detail::transformed_ranks(design, space, perm, mask);
      if (!best || ranks < *best) best = std::move(ranks);
    }
  }
  return *best;
}

// The canonical representative itself, as a design with sorted runs.
inline Design canonical_geometric(const Design& design) {
  std::vector<long long> ranks = canonical_geometric_ranks(design);
  std::vector<Run> runs;
  runs.reserve(ranks.size());
  for (long long r : ranks) runs.push_back(design.space().unrank(r));
  return Design(design.space(), std::move(runs));
}

// Partition of a design list into geometric-isomorphism classes.
struct GeomPartition {
  // members[c] lists input indices of class c, in input order; classes
  // are ordered by first appearance.
  std::vector<std::vector<int>> members;
  std::vector<Design> representatives;  // canonical form of each class
};

inline GeomPartition classify_geometric(const std::vector<Design>& designs) {
  GeomPartition part;
  std::vector<std::vector<long long>> keys;
  for (size_t i = 0; i < designs.size(); ++i) {
    std::vector<long long> key = canonical_geometric_ranks(designs[i]);
    size_t c = 0;
    while (c < keys.size() && keys[c] != key) ++c;
    if (c == keys.size()) {
      keys.push_back(key);
      part.members.emplace_back();
      std::vector<Run> runs;
      runs.reserve(key.size());
      for (long long r : key) runs.push_back(designs[i].space().unrank(r));
      part.representatives.emplace_back(designs[i].space(), std::move(runs));
    }
    part.members[c].push_back(static_cast<int>(i));
  }
  return part;
}

}  // namespace minaber
