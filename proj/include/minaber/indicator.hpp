#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "minaber/basis.hpp"
#include "minaber/design.hpp"
#include "minaber/errors.hpp"

namespace minaber {

//======================================================================
// Coefficients b_t of the indicator function of a design, expanded over
// a contrast basis:  F(x) = sum_t b_t C_t(x).  Stored densely, one
// entry per multi-index, in grid-rank order; entries[0] = b_0 = n/N.
struct CoefficientTable {
  DesignSpace space;
  ContrastBasis basis;
  std::vector<double> entries;
  int n = 0;  // run count of the source design

  double b0() const { return entries[0]; }
  double at(const MultiIndex& t) const { return entries[space.rank(t)]; }
};

// b_t = (1/N) sum over runs (with multiplicity) of C_t(x).
//
// Computed per run by expanding the tensor product factor by factor;
// the expansion index equals the grid rank of t because the last factor
// varies fastest in both.
inline CoefficientTable coefficients(const Design& design,
                                     const ContrastBasis& basis) {
  if (design.space() != basis.space()) {
    throw ShapeError("design and basis are on different spaces");
  }
  const DesignSpace& space = design.space();
  const int k = space.num_factors();
  const size_t N = static_cast<size_t>(space.num_points());

  CoefficientTable table;
  table.space = space;
  table.basis = basis;
  table.n = design.run_count();
  table.entries.assign(N, 0.0);

  std::vector<double> row, next;
  row.reserve(N);
  next.reserve(N);
  for (const Run& x : design.runs()) {
    row.assign(1, 1.0);
    for (int i = 0; i < k; ++i) {
      const FactorBasis& fb = basis.factor(i);
      const int s = fb.levels;
      next.assign(row.size() * s, 0.0);
      for (size_t a = 0; a < row.size(); ++a) {
        for (int j = 0; j < s; ++j) {
          next[a * s + j] = row[a] * fb.values[j][x[i]];
        }
      }
      row.swap(next);
    }
    for (size_t r = 0; r < N; ++r) table.entries[r] += row[r];
  }
  const double invN = 1.0 / static_cast<double>(N);
  for (double& b : table.entries) b *= invN;
  return table;
}

// F(x) = sum_t b_t C_t(x), rounded to the nearest integer.  The value is
// the multiplicity of x in the source design, so the rounded result must
// be a nonnegative integer with residual below tol.
inline int evaluate_indicator(const CoefficientTable& coeffs, const Run& x,
                              double tol = 1e-6) {
  const DesignSpace& space = coeffs.space;
  if (!space.contains(x)) {
    throw ShapeError("point outside the design space");
  }
  const int k = space.num_factors();
  std::vector<double> row(1, 1.0), next;
  for (int i = 0; i < k; ++i) {
    const FactorBasis& fb = coeffs.basis.factor(i);
    const int s = fb.levels;
    next.assign(row.size() * s, 0.0);
    for (size_t a = 0; a < row.size(); ++a) {
      for (int j = 0; j < s; ++j) {
        next[a * s + j] = row[a] * fb.values[j][x[i]];
      }
    }
    row.swap(next);
  }
  double f = 0.0;
  for (size_t r = 0; r < row.size(); ++r) f += coeffs.entries[r] * row[r];

  const double rounded = std::round(f);
  if (std::abs(f - rounded) >= tol || rounded < 0.0) {
    throw InconsistentCoefficients(
        "indicator value " + std::to_string(f) +
        " is not a nonnegative integer within tolerance");
  }
  return static_cast<int>(rounded);
}

// Concatenates run multisets; the coefficient table of the result is the
// entrywise sum of the parts' tables.
inline Design combine(const std::vector<Design>& designs) {
  if (designs.empty()) {
    throw ShapeError("combine needs at least one design");
  }
  const DesignSpace& space = designs.front().space();
  std::vector<Run> runs;
  for (const Design& d : designs) {
    if (d.space() != space) {
      throw ShapeError("combine: designs are on different spaces");
    }
    runs.insert(runs.end(), d.runs().begin(), d.runs().end());
  }
  return Design(space, std::move(runs));
}

// Restriction of every run to the kept factors, preserving run order and
// multiplicity.  `keep` lists factor indices; the result's factor order
// follows `keep`.
inline Design project(const Design& design, const std::vector<int>& keep) {
  if (keep.empty()) {
    throw InvalidProjection("projection needs at least one factor");
  }
  const DesignSpace& space = design.space();
  std::vector<int> levels;
  levels.reserve(keep.size());
  for (int i : keep) {
    if (i < 0 || i >= space.num_factors()) {
      throw InvalidProjection("factor index " + std::to_string(i) +
                              " out of range");
    }
    levels.push_back(space.level_count(i));
  }
  DesignSpace sub(levels);
  std::vector<Run> runs;
  runs.reserve(design.runs().size());
  for (const Run& x : design.runs()) {
    Run y(keep.size());
    for (size_t l = 0; l < keep.size(); ++l) y[l] = x[keep[l]];
    runs.push_back(std::move(y));
  }
  return Design(std::move(sub), std::move(runs));
}

// sum_t (b_t/b_0)^2.  Equals n2*N/n^2 where n2 = sum_x F(x)^2.
inline double sum_of_squares(const CoefficientTable& coeffs,
                             double tol = 1e-9) {
  const double b0 = coeffs.b0();
  if (std::abs(b0) <= tol) {
    throw EmptyDesignError("coefficient table of an empty design");
  }
  double total = 0.0;
  for (double b : coeffs.entries) {
    const double r = b / b0;
    total += r * r;
  }
  return total;
}

}  // namespace minaber
