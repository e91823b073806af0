#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "minaber/aberration.hpp"
#include "minaber/design.hpp"
#include "minaber/errors.hpp"
#include "minaber/indicator.hpp"

namespace minaber {

// The 18-run orthogonal array with one two-level column (0) and seven
// three-level columns (1-7); strength 2.
inline Design builtin_l18() {
  static const int rows[18][8] = {
      {0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 1, 1, 1, 1, 1, 1},
      {0, 0, 2, 2, 2, 2, 2, 2}, {0, 1, 0, 0, 1, 1, 2, 2},
      {0, 1, 1, 1, 2, 2, 0, 0}, {0, 1, 2, 2, 0, 0, 1, 1},
      {0, 2, 0, 1, 0, 2, 1, 2}, {0, 2, 1, 2, 1, 0, 2, 0},
      {0, 2, 2, 0, 2, 1, 0, 1}, {1, 0, 0, 2, 2, 1, 1, 0},
      {1, 0, 1, 0, 0, 2, 2, 1}, {1, 0, 2, 1, 1, 0, 0, 2},
      {1, 1, 0, 1, 2, 0, 2, 1}, {1, 1, 1, 2, 0, 1, 0, 2},
      {1, 1, 2, 0, 1, 2, 1, 0}, {1, 2, 0, 2, 1, 2, 0, 1},
      {1, 2, 1, 0, 2, 0, 1, 2}, {1, 2, 2, 1, 0, 1, 2, 0}};
  DesignSpace space({2, 3, 3, 3, 3, 3, 3, 3});
  std::vector<Run> runs;
  runs.reserve(18);
  for (const auto& row : rows) runs.emplace_back(row, row + 8);
  return Design(std::move(space), std::move(runs));
}

namespace detail {

inline bool permutation_is_even(const std::vector<int>& p) {
  int inversions = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] > p[j]) ++inversions;
    }
  }
  return inversions % 2 == 0;
}

}  // namespace detail

// One level permutation per pair {p, r o p}, where r(x) = s-1-x is the
// level reversal: reversed permutations produce geometrically isomorphic
// designs, so only one member of each pair needs enumerating.  Within a
// pair the even permutation is kept when the parities differ (they do
// exactly when r is odd), otherwise the lexicographically smaller one.
// The list is returned in lexicographic order; for s = 3 this is the
// identity and the two cyclic shifts x -> x+1, x -> x+2 (mod 3).
inline std::vector<std::vector<int>> level_permutation_reps(int s) {
  if (s < 2) {
    throw InvalidLevelCount("level permutations need s >= 2, got " +
                            std::to_string(s));
  }
  std::vector<std::vector<int>> reps;
  std::vector<std::vector<int>> all;
  std::vector<int> p(s);
  std::iota(p.begin(), p.end(), 0);
  do {
    all.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  std::vector<char> used(all.size(), 0);
  for (size_t a = 0; a < all.size(); ++a) {
    if (used[a]) continue;
    std::vector<int> mirror(s);
    for (int x = 0; x < s; ++x) mirror[x] = s - 1 - all[a][x];
    const size_t b = static_cast<size_t>(
        std::lower_bound(all.begin(), all.end(), mirror) - all.begin());
    used[a] = used[b] = 1;
    const bool even_a = detail::permutation_is_even(all[a]);
    const bool even_b = detail::permutation_is_even(all[b]);
    if (even_a != even_b) {
      reps.push_back(even_a ? all[a] : all[b]);
    } else {
      reps.push_back(std::min(all[a], all[b]));
    }
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

// Display label for the i-th representative of an s-level column: for
// three levels the cyclic shifts are written u and u^2; identity is
// blank everywhere.
inline std::string perm_label(int s, int index) {
  if (index == 0) return "";
  if (s == 3) return index == 1 ? "u" : "u²";
  return "p" + std::to_string(index);
}

//======================================================================
// One projection-plus-permutation candidate: the parent design
// restricted to `columns`, with each column's levels mapped by the
// chosen permutation representative.
struct Variant {
  std::vector<int> columns;
  std::vector<int> perm_index;  // index into level_permutation_reps per column
  Design design;
  WordlengthPattern beta;

  // "1u² 2 5" style label: column indices with permutation suffixes.
  std::string label() const {
    std::string out;
    for (size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(columns[i]);
      out += perm_label(design.space().level_count(static_cast<int>(i)),
                        perm_index[i]);
    }
    return out;
  }
};

// All permutation-representative assignments for one column subset, in
// mixed-radix order with the last column varying fastest.
inline std::vector<Variant> enumerate_variants(const Design& parent,
                                               const std::vector<int>& columns) {
  const Design base = project(parent, columns);
  const ContrastBasis basis(base.space());
  const int m = static_cast<int>(columns.size());

  std::vector<std::vector<std::vector<int>>> reps(m);
  for (int i = 0; i < m; ++i) {
    reps[i] = level_permutation_reps(base.space().level_count(i));
  }

  std::vector<Variant> variants;
  std::vector<int> pick(m, 0);
  while (true) {
    std::vector<Run> runs;
    runs.reserve(base.runs().size());
    for (const Run& x : base.runs()) {
      Run y(m);
      for (int i = 0; i < m; ++i) y[i] = reps[i][pick[i]][x[i]];
      runs.push_back(std::move(y));
    }
    Variant v;
    v.columns = columns;
    v.perm_index = pick;
    v.design = Design(base.space(), std::move(runs));
    v.beta = beta_wlp(coefficients(v.design, basis));
    variants.push_back(std::move(v));

    int i = m - 1;
    while (i >= 0 && ++pick[i] == static_cast<int>(reps[i].size())) {
      pick[i--] = 0;
    }
    if (i < 0) break;
  }
  return variants;
}

struct SearchResult {
  // All variants achieving the minimal beta pattern, sorted by
  // (columns, perm_index); front() is the reported representative.
  std::vector<Variant> minima;
  // Every candidate sorted best-to-worst, filled only on request.
  std::vector<Variant> ranking;
};

// Exhaustive minimum-aberration search over size-m column subsets of the
// parent and all permutation-representative assignments, minimizing the
// full beta pattern lexicographically.  By default only columns with at
// least three levels are eligible; with include_two_level set, every
// two-level column is forced into each subset.
inline SearchResult min_aberration_projection(const Design& parent, int m,
                                              bool include_two_level = false,
                                              bool keep_ranking = false,
                                              double tol = 1e-6) {
  const DesignSpace& space = parent.space();
  std::vector<int> forced, eligible;
  for (int i = 0; i < space.num_factors(); ++i) {
    if (space.level_count(i) == 2) {
      if (include_two_level) forced.push_back(i);
    } else {
      eligible.push_back(i);
    }
  }
  const int free_slots = m - static_cast<int>(forced.size());
  if (free_slots < 0 || free_slots > static_cast<int>(eligible.size()) ||
      m < 1) {
    throw InvalidSizeError("no size-" + std::to_string(m) +
                           " projection with these columns");
  }

  SearchResult result;
  // Subsets in lexicographic order of the chosen column list.
  std::vector<std::vector<int>> subsets;
  {
    std::vector<int> idx(free_slots);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      std::vector<int> cols = forced;
      for (int i : idx) cols.push_back(eligible[i]);
      std::sort(cols.begin(), cols.end());
      subsets.push_back(std::move(cols));
      int i = free_slots - 1;
      while (i >= 0 &&
             idx[i] == static_cast<int>(eligible.size()) - free_slots + i) {
        --i;
      }
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < free_slots; ++j) idx[j] = idx[j - 1] + 1;
    }
  }

  for (const std::vector<int>& cols : subsets) {
    for (Variant& v : enumerate_variants(parent, cols)) {
      if (result.minima.empty()) {
        result.minima.push_back(v);
      } else {
        switch (compare_wlp(v.beta, result.minima.front().beta, tol)) {
          case WlpOrder::less:
            result.minima.clear();
            result.minima.push_back(v);
            break;
          case WlpOrder::equal:
            result.minima.push_back(v);
            break;
          case WlpOrder::greater:
            break;
        }
      }
      if (keep_ranking) result.ranking.push_back(std::move(v));
    }
  }

  auto key_less = [](const Variant& a, const Variant& b) {
    return std::tie(a.columns, a.perm_index) < std::tie(b.columns, b.perm_index);
  };
  std::sort(result.minima.begin(), result.minima.end(), key_less);
  if (keep_ranking) {
    std::stable_sort(result.ranking.begin(), result.ranking.end(),
                     [&](const Variant& a, const Variant& b) {
                       switch (compare_wlp(a.beta, b.beta, tol)) {
                         case WlpOrder::less: return true;
                         case WlpOrder::greater: return false;
                         case WlpOrder::equal: return key_less(a, b);
                       }
                       return false;
                     });
  }
  return result;
}

}  // namespace minaber
