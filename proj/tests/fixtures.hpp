#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "minaber/minaber.hpp"

namespace fixtures {

// 3^{3-1} fraction with x1 + x2 + x3 = 0 (mod 3); its only nonzero
// coefficients besides b_000 = 1/3 are b_112 = b_121 = b_211 = sqrt(2)/6
// and b_222 = -sqrt(2)/6.
inline minaber::Design fraction_sum() {
  std::vector<minaber::Run> runs;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      runs.push_back({a, b, (6 - a - b) % 3});
    }
  }
  return minaber::Design(minaber::DesignSpace({3, 3, 3}), std::move(runs));
}

// 3^{3-1} fraction with x3 = x1 + x2 (mod 3): a level permutation of
// fraction_sum in the third factor, but geometrically distinct.
inline minaber::Design fraction_diff() {
  std::vector<minaber::Run> runs;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      runs.push_back({a, b, (a + b) % 3});
    }
  }
  return minaber::Design(minaber::DesignSpace({3, 3, 3}), std::move(runs));
}

// n runs drawn uniformly with replacement: an arbitrary multiset design.
inline minaber::Design random_design(const minaber::DesignSpace& space, int n,
                                     std::mt19937& rng) {
  std::vector<minaber::Run> runs;
  runs.reserve(n);
  for (int r = 0; r < n; ++r) {
    minaber::Run x(space.num_factors());
    for (int i = 0; i < space.num_factors(); ++i) {
      x[i] = std::uniform_int_distribution<int>(0, space.level_count(i) - 1)(rng);
    }
    runs.push_back(std::move(x));
  }
  return minaber::Design(space, std::move(runs));
}

inline minaber::GeomTransform random_geom(const minaber::DesignSpace& space,
                                          std::mt19937& rng) {
  // Random level-count-respecting factor permutation: shuffle within
  // groups of equal level count.
  const int k = space.num_factors();
  minaber::GeomTransform g = minaber::GeomTransform::identity(k);
  for (int pass = 0; pass < k; ++pass) {
    const int a = std::uniform_int_distribution<int>(0, k - 1)(rng);
    const int b = std::uniform_int_distribution<int>(0, k - 1)(rng);
    if (space.level_count(a) == space.level_count(b)) {
      std::swap(g.source_factor[a], g.source_factor[b]);
    }
  }
  for (int l = 0; l < k; ++l) {
    g.reversed[l] = static_cast<std::uint8_t>(rng() & 1u);
  }
  return g;
}

inline minaber::CombTransform random_comb(const minaber::DesignSpace& space,
                                          std::mt19937& rng) {
  const int k = space.num_factors();
  minaber::CombTransform c;
  c.source_factor.resize(k);
  for (int l = 0; l < k; ++l) c.source_factor[l] = l;
  for (int pass = 0; pass < k; ++pass) {
    const int a = std::uniform_int_distribution<int>(0, k - 1)(rng);
    const int b = std::uniform_int_distribution<int>(0, k - 1)(rng);
    if (space.level_count(a) == space.level_count(b)) {
      std::swap(c.source_factor[a], c.source_factor[b]);
    }
  }
  c.level_perm.resize(k);
  for (int l = 0; l < k; ++l) {
    std::vector<int> p(space.level_count(l));
    for (size_t v = 0; v < p.size(); ++v) p[v] = static_cast<int>(v);
    std::shuffle(p.begin(), p.end(), rng);
    c.level_perm[l] = std::move(p);
  }
  return c;
}

// n2 = sum over grid points of the squared multiplicity, by counting.
inline long long replicate_sum(const minaber::Design& design) {
  std::vector<long long> ranks = design.sorted_run_ranks();
  long long n2 = 0, runlen = 0;
  for (size_t i = 0; i < ranks.size(); ++i) {
    ++runlen;
    if (i + 1 == ranks.size() || ranks[i + 1] != ranks[i]) {
      n2 += runlen * runlen;
      runlen = 0;
    }
  }
  return n2;
}

}  // namespace fixtures
