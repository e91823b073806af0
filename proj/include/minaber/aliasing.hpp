#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <vector>

#include "minaber/basis.hpp"
#include "minaber/design.hpp"
#include "minaber/errors.hpp"
#include "minaber/indicator.hpp"

namespace minaber {

//======================================================================
// Expansion coefficients of products of one-factor contrasts:
//   C_u(x) C_v(x) = sum_w h[u][v][w] C_w(x)  on the factor's grid.
// Symmetric in u, v; h[u][0][w] = delta_{uw} since C_0 = 1.
struct StructureConstants {
  int levels = 0;
  std::vector<std::vector<std::vector<double>>> h;  // [s][s][s]

  double at(int u, int v, int w) const { return h[u][v][w]; }
};

// h[u][v][w] = (1/s) sum_x C_u(x) C_v(x) C_w(x): the projection of the
// product onto C_w under the same normalization as the basis.
inline StructureConstants structure_constants(const FactorBasis& fb) {
  const int s = fb.levels;
  StructureConstants sc;
  sc.levels = s;
  sc.h.assign(s, std::vector<std::vector<double>>(s, std::vector<double>(s, 0.0)));
  for (int u = 0; u < s; ++u) {
    for (int v = 0; v < s; ++v) {
      for (int w = 0; w < s; ++w) {
        double sum = 0.0;
        for (int x = 0; x < s; ++x) {
          sum += fb.values[u][x] * fb.values[v][x] * fb.values[w][x];
        }
        sc.h[u][v][w] = sum / s;
      }
    }
  }
  return sc;
}

// Structure constants of the orthogonal polynomial basis for a given
// level count, computed once per s and cached.
inline const StructureConstants& opb_structure_constants(int s) {
  static std::mutex mu;
  static std::map<int, StructureConstants> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(s);
  if (it == cache.end()) {
    it = cache.emplace(s, structure_constants(build_opb(s))).first;
  }
  return it->second;
}

// Correlation of contrasts C_u and C_v on the design:
//   [ sum_w (prod_i h[u_i][v_i][w_i]) b_w ] / b_0.
// For disjoint u, v this reduces to b_{u+v} / b_0.
inline double contrast_correlation(const CoefficientTable& coeffs,
                                   const std::vector<StructureConstants>& sc,
                                   const MultiIndex& u, const MultiIndex& v) {
  const DesignSpace& space = coeffs.space;
  const int k = space.num_factors();
  if (static_cast<int>(sc.size()) != k || !space.contains(u) ||
      !space.contains(v)) {
    throw ValidationError("multi-index or constants do not fit the space");
  }
  if (coeffs.b0() <= 1e-15) {
    throw EmptyDesignError("correlation on an empty design");
  }
  double num = 0.0;
  std::vector<int> w(k, 0);
  long long r = 0;
  do {
    double prod = 1.0;
    for (int i = 0; i < k; ++i) prod *= sc[i].h[u[i]][v[i]][w[i]];
    num += prod * coeffs.entries[r];
    ++r;
  } while (space.next_point(w));
  return num / coeffs.b0();
}

// Convenience overload using the cached OPB constants of the space.
inline double contrast_correlation(const CoefficientTable& coeffs,
                                   const MultiIndex& u, const MultiIndex& v) {
  std::vector<StructureConstants> sc;
  sc.reserve(coeffs.space.num_factors());
  for (int s : coeffs.space.levels()) sc.push_back(opb_structure_constants(s));
  return contrast_correlation(coeffs, sc, u, v);
}

}  // namespace minaber
