#pragma once

#include <cmath>
#include <cstdlib>
#include <utility>
#include <vector>

#include "minaber/design.hpp"
#include "minaber/errors.hpp"

namespace minaber {

//======================================================================
// Orthonormal contrast system for a single s-level factor.
//
// values[j][x] is the j-th contrast evaluated at level x.  The system
// satisfies, over the uniform measure on {0, ..., s-1}:
//   sum_x values[j][x] * values[l][x] = s * delta_{jl}
// with values[0][x] = 1 for all x, and the sign fixed so that
// values[j][s-1] > 0 for every j >= 1.
struct FactorBasis {
  int levels = 0;
  std::vector<std::vector<double>> values;  // [s][s]

  double at(int contrast, int level) const { return values[contrast][level]; }
};

// Builds the orthogonal polynomial contrasts of degrees 0 .. s-1 on the
// levels {0, ..., s-1} via the monic three-term recurrence
//   p_{j+1}(x) = (x - a_j) p_j(x) - b_j p_{j-1}(x),
// then scales each p_j so that sum_x p_j(x)^2 = s.  The j-th contrast is
// then a degree-j polynomial in x, and the leading-coefficient sign of a
// monic polynomial already makes p_j(s-1) > 0.
inline FactorBasis build_opb(int s) {
  if (s < 2) {
    throw InvalidLevelCount("orthogonal polynomial basis needs s >= 2, got " +
                            std::to_string(s));
  }
  const int n = s;
  // Monic polynomials evaluated on the grid.
  std::vector<std::vector<double>> p(n, std::vector<double>(n, 0.0));
  std::vector<double> sq(n, 0.0);  // sum_x p_j(x)^2

  for (int x = 0; x < n; ++x) p[0][x] = 1.0;
  sq[0] = n;

  for (int j = 0; j + 1 < n; ++j) {
    double a = 0.0;
    for (int x = 0; x < n; ++x) a += x * p[j][x] * p[j][x];
    a /= sq[j];
    const double b = (j == 0) ? 0.0 : sq[j] / sq[j - 1];
    for (int x = 0; x < n; ++x) {
      p[j + 1][x] = (x - a) * p[j][x] - (j == 0 ? 0.0 : b * p[j - 1][x]);
    }
    sq[j + 1] = 0.0;
    for (int x = 0; x < n; ++x) sq[j + 1] += p[j + 1][x] * p[j + 1][x];
  }

  FactorBasis basis;
  basis.levels = s;
  basis.values = std::move(p);
  for (int j = 0; j < n; ++j) {
    const double scale = std::sqrt(n / sq[j]);
    for (int x = 0; x < n; ++x) basis.values[j][x] *= scale;
  }
  // The constant contrast is exactly 1.
  for (int x = 0; x < n; ++x) basis.values[0][x] = 1.0;
  return basis;
}

//======================================================================
// Per-factor contrast systems for a whole design space.  Product
// contrasts C_t(x) = prod_i values[t_i][x_i] are orthonormal (up to the
// factor N) over the full grid.
class ContrastBasis {
 public:
  ContrastBasis() = default;

  explicit ContrastBasis(const DesignSpace& space) : space_(space) {
    factors_.reserve(space.num_factors());
    for (int i = 0; i < space.num_factors(); ++i) {
      factors_.push_back(build_opb(space.level_count(i)));
    }
  }

  const DesignSpace& space() const { return space_; }
  const FactorBasis& factor(int i) const { return factors_[i]; }

  // C_t(x): product of per-factor contrast values.
  double contrast_value(const MultiIndex& t, const Run& x) const {
    double v = 1.0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      v *= factors_[i].values[t[i]][x[i]];
    }
    return v;
  }

 private:
  DesignSpace space_;
  std::vector<FactorBasis> factors_;
};

// Checks orthonormality and the sign convention of a single-factor
// system to within tol; returns true when every condition holds.
inline bool verify_basis(const FactorBasis& basis, double tol = 1e-9) {
  const int s = basis.levels;
  if (static_cast<int>(basis.values.size()) != s) return false;
  for (int j = 0; j < s; ++j) {
    if (static_cast<int>(basis.values[j].size()) != s) return false;
  }
  for (int j = 0; j < s; ++j) {
    for (int l = j; l < s; ++l) {
      double dot = 0.0;
      for (int x = 0; x < s; ++x) dot += basis.values[j][x] * basis.values[l][x];
      const double target = (j == l) ? s : 0.0;
      if (std::abs(dot - target) > tol) return false;
    }
  }
  for (int x = 0; x < s; ++x) {
    if (std::abs(basis.values[0][x] - 1.0) > tol) return false;
  }
  for (int j = 1; j < s; ++j) {
    if (basis.values[j][s - 1] <= 0.0) return false;
  }
  return true;
}

}  // namespace minaber
