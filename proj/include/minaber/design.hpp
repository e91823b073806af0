#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "minaber/errors.hpp"

namespace minaber {

// A run assigns one level to each factor; levels of factor i are the
// integers 0 .. s_i - 1.
using Run = std::vector<int>;

// A multi-index selects one contrast per factor; entry t_i in 0 .. s_i - 1.
using MultiIndex = std::vector<int>;

// Number of nonzero entries of a multi-index: how many factors the
// corresponding contrast involves.
inline int active_factors(const MultiIndex& t) {
  return static_cast<int>(std::count_if(t.begin(), t.end(),
                                        [](int v) { return v != 0; }));
}

// Entry sum of a multi-index: the polynomial degree of the corresponding
// contrast in an orthogonal polynomial basis.
inline int polynomial_degree(const MultiIndex& t) {
  return std::accumulate(t.begin(), t.end(), 0);
}

//======================================================================
// The full factorial grid: k factors with level counts (s_1, ..., s_k).
// Points and multi-indices are enumerated in mixed-radix order with the
// last factor varying fastest, so grid rank and lexicographic order on
// coordinate vectors agree.
class DesignSpace {
 public:
  DesignSpace() = default;

  explicit DesignSpace(std::vector<int> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) {
      throw InvalidLevelCount("design space needs at least one factor");
    }
    for (int s : levels_) {
      if (s < 2) {
        throw InvalidLevelCount("factor level count must be at least 2, got " +
                                std::to_string(s));
      }
    }
  }

  int num_factors() const { return static_cast<int>(levels_.size()); }
  int level_count(int factor) const { return levels_[factor]; }
  const std::vector<int>& levels() const { return levels_; }

  // N: number of grid points.
  long long num_points() const {
    long long n = 1;
    for (int s : levels_) n *= s;
    return n;
  }

  // K: highest polynomial degree representable on the grid.
  int max_degree() const {
    int k = 0;
    for (int s : levels_) k += s - 1;
    return k;
  }

  bool contains(const Run& x) const {
    if (x.size() != levels_.size()) return false;
    for (size_t i = 0; i < x.size(); ++i) {
      if (x[i] < 0 || x[i] >= levels_[i]) return false;
    }
    return true;
  }

  // Rank of a point or multi-index in enumeration order.
  long long rank(const std::vector<int>& t) const {
    long long idx = 0;
    for (size_t i = 0; i < levels_.size(); ++i) idx = idx * levels_[i] + t[i];
    return idx;
  }

  std::vector<int> unrank(long long idx) const {
    std::vector<int> t(levels_.size());
    for (int i = num_factors() - 1; i >= 0; --i) {
      t[i] = static_cast<int>(idx % levels_[i]);
      idx /= levels_[i];
    }
    return t;
  }

  // Advances t to the next point in enumeration order; returns false once
  // the last point has been passed.
  bool next_point(std::vector<int>& t) const {
    for (int i = num_factors() - 1; i >= 0; --i) {
      if (++t[i] < levels_[i]) return true;
      t[i] = 0;
    }
    return false;
  }

  friend bool operator==(const DesignSpace& a, const DesignSpace& b) {
    return a.levels_ == b.levels_;
  }
  friend bool operator!=(const DesignSpace& a, const DesignSpace& b) {
    return !(a == b);
  }

 private:
  std::vector<int> levels_;
};

//======================================================================
// A factorial design: an ordered multiset of runs inside a design space.
// Duplicate runs are allowed and counted with multiplicity.
class Design {
 public:
  Design() = default;

  Design(DesignSpace space, std::vector<Run> runs)
      : space_(std::move(space)), runs_(std::move(runs)) {
    for (const Run& x : runs_) {
      if (!space_.contains(x)) {
        throw ValidationError("run out of bounds for the design space");
      }
    }
  }

  const DesignSpace& space() const { return space_; }
  const std::vector<Run>& runs() const { return runs_; }
  int run_count() const { return static_cast<int>(runs_.size()); }

  // Multiplicity of a single point, by direct counting.
  int count(const Run& x) const {
    return static_cast<int>(std::count(runs_.begin(), runs_.end(), x));
  }

  // Runs encoded as grid ranks, sorted: a canonical multiset fingerprint.
  std::vector<long long> sorted_run_ranks() const {
    std::vector<long long> r;
    r.reserve(runs_.size());
    for (const Run& x : runs_) r.push_back(space_.rank(x));
    std::sort(r.begin(), r.end());
    return r;
  }

  // Multiset equality of runs (order-insensitive).
  bool same_runs(const Design& other) const {
    return space_ == other.space_ &&
           sorted_run_ranks() == other.sorted_run_ranks();
  }

 private:
  DesignSpace space_;
  std::vector<Run> runs_;
};

// The design containing every grid point exactly once.
inline Design full_factorial(const DesignSpace& space) {
  std::vector<Run> runs;
  runs.reserve(static_cast<size_t>(space.num_points()));
  std::vector<int> x(space.num_factors(), 0);
  do {
    runs.push_back(x);
  } while (space.next_point(x));
  return Design(space, std::move(runs));
}

}  // namespace minaber
