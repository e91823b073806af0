#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "fixtures.hpp"
#include "minaber/minaber.hpp"

using namespace minaber;

TEST_CASE("apply_geom maps runs coordinatewise", "[isomorphism]") {
  const Design left = fixtures::fraction_sum();
  const Design right = fixtures::fraction_diff();

  REQUIRE(apply_geom(left, GeomTransform::identity(3)).same_runs(left));

  // x1+x2+x3 = 0 is preserved by reversing every coordinate.
  GeomTransform rev = GeomTransform::identity(3);
  rev.reversed = {1, 1, 1};
  REQUIRE(apply_geom(left, rev).same_runs(left));

  // x3 = x1+x2 is symmetric in the first two factors.
  GeomTransform swap = GeomTransform::identity(3);
  swap.source_factor = {1, 0, 2};
  REQUIRE(apply_geom(right, swap).same_runs(right));

  GeomTransform bad = GeomTransform::identity(3);
  bad.source_factor = {0, 0, 2};
  REQUIRE_THROWS_AS(apply_geom(left, bad), ShapeError);
  GeomTransform wrong_size = GeomTransform::identity(2);
  REQUIRE_THROWS_AS(apply_geom(left, wrong_size), ShapeError);
}

TEST_CASE("the two regular fractions are not geometrically isomorphic",
          "[isomorphism]") {
  const Design left = fixtures::fraction_sum();
  const Design right = fixtures::fraction_diff();
  REQUIRE_FALSE(geom_isomorphic(left, right).has_value());
  REQUIRE_FALSE(geom_isomorphic(right, left).has_value());
}

TEST_CASE("transformed designs come back with a sound witness",
          "[isomorphism]") {
  std::mt19937 rng(808);
  for (const Design& base :
       {fixtures::fraction_sum(), fixtures::fraction_diff()}) {
    for (int trial = 0; trial < 10; ++trial) {
      const GeomTransform g = fixtures::random_geom(base.space(), rng);
      const Design moved = apply_geom(base, g);
      const std::optional<GeomTransform> witness = geom_isomorphic(moved, base);
      REQUIRE(witness.has_value());
      // Soundness: the witness really maps the second design onto the
      // first, exactly as an integer multiset.
      REQUIRE(apply_geom(base, *witness).same_runs(moved));
    }
  }
}

TEST_CASE("coefficient-space check matches the multiset decision",
          "[isomorphism]") {
  const Design left = fixtures::fraction_sum();
  const Design right = fixtures::fraction_diff();
  const ContrastBasis basis(left.space());
  const CoefficientTable cl = coefficients(left, basis);
  const CoefficientTable cr = coefficients(right, basis);

  REQUIRE(theorem31_check(cl, cl, GeomTransform::identity(3)));

  SECTION("no transform relates the two fractions") {
    std::vector<int> perm = {0, 1, 2};
    std::sort(perm.begin(), perm.end());
    int checked = 0;
    do {
      for (unsigned mask = 0; mask < 8; ++mask) {
        GeomTransform g;
        g.source_factor = perm;
        g.reversed = {static_cast<std::uint8_t>(mask & 1u),
                      static_cast<std::uint8_t>((mask >> 1) & 1u),
                      static_cast<std::uint8_t>((mask >> 2) & 1u)};
        REQUIRE_FALSE(theorem31_check(cl, cr, g));
        ++checked;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    REQUIRE(checked == 48);
  }

  SECTION("forward direction: a transformed design passes with its own g") {
    std::mt19937 rng(909);
    for (int trial = 0; trial < 10; ++trial) {
      const GeomTransform g = fixtures::random_geom(left.space(), rng);
      const Design moved = apply_geom(left, g);
      const CoefficientTable cm = coefficients(moved, basis);
      REQUIRE(theorem31_check(cm, cl, g));
    }
  }

  SECTION("agreement with the exhaustive multiset search") {
    for (const Design& a : {left, right}) {
      for (const Design& b : {left, right}) {
        const CoefficientTable ca = coefficients(a, basis);
        const CoefficientTable cb = coefficients(b, basis);
        bool some_transform_passes = false;
        std::vector<int> perm = {0, 1, 2};
        do {
          for (unsigned mask = 0; mask < 8; ++mask) {
            GeomTransform g;
            g.source_factor = perm;
            g.reversed = {static_cast<std::uint8_t>(mask & 1u),
                          static_cast<std::uint8_t>((mask >> 1) & 1u),
                          static_cast<std::uint8_t>((mask >> 2) & 1u)};
            some_transform_passes =
                some_transform_passes || theorem31_check(ca, cb, g);
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
        REQUIRE(some_transform_passes == geom_isomorphic(a, b).has_value());
      }
    }
  }
}

TEST_CASE("combinatorial isomorphism finds the level permutation",
          "[isomorphism]") {
  const Design left = fixtures::fraction_sum();
  const Design right = fixtures::fraction_diff();

  const std::optional<CombTransform> c = comb_isomorphic(left, right);
  REQUIRE(c.has_value());
  REQUIRE(apply_comb(right, *c).same_runs(left));

  const std::optional<CombTransform> self = comb_isomorphic(left, left);
  REQUIRE(self.has_value());

  // Geometric isomorphism implies combinatorial isomorphism.
  std::mt19937 rng(101);
  const Design moved = apply_geom(left, fixtures::random_geom(left.space(), rng));
  REQUIRE(geom_isomorphic(left, moved).has_value());
  REQUIRE(comb_isomorphic(left, moved).has_value());
}

TEST_CASE("three-factor projections of different combinatorial classes",
          "[isomorphism]") {
  const Design l18 = builtin_l18();
  const Design p123 = project(l18, {1, 2, 3});
  const Design p125 = project(l18, {1, 2, 5});
  REQUIRE_FALSE(comb_isomorphic(p123, p125).has_value());
  REQUIRE_FALSE(geom_isomorphic(p123, p125).has_value());
}

TEST_CASE("isomorphism is an equivalence on the fixture set", "[isomorphism]") {
  std::mt19937 rng(2020);
  const Design a = fixtures::fraction_sum();
  const GeomTransform g1 = fixtures::random_geom(a.space(), rng);
  const GeomTransform g2 = fixtures::random_geom(a.space(), rng);
  const Design b = apply_geom(a, g1);
  const Design c = apply_geom(b, g2);

  REQUIRE(geom_isomorphic(a, a).has_value());
  REQUIRE(geom_isomorphic(a, b).has_value() ==
          geom_isomorphic(b, a).has_value());
  REQUIRE(geom_isomorphic(a, b).has_value());
  REQUIRE(geom_isomorphic(b, c).has_value());
  REQUIRE(geom_isomorphic(a, c).has_value());
}

TEST_CASE("classification groups permutation variants", "[isomorphism]") {
  const Design l18 = builtin_l18();

  auto class_count = [&](const std::vector<int>& cols) {
    std::vector<Design> designs;
    for (Variant& v : enumerate_variants(l18, cols)) {
      designs.push_back(std::move(v.design));
    }
    return classify_geometric(designs).members.size();
  };

  REQUIRE(class_count({1, 2, 3}) == 2);
  REQUIRE(class_count({1, 2, 5}) == 4);
  REQUIRE(class_count({1, 3, 4}) == 2);

  // A full factorial is invariant under every transform.
  DesignSpace space({3, 3});
  std::vector<Design> fulls;
  for (Variant& v :
       enumerate_variants(full_factorial(space), {0, 1})) {
    fulls.push_back(std::move(v.design));
  }
  const GeomPartition part = classify_geometric(fulls);
  REQUIRE(part.members.size() == 1);
  REQUIRE(part.members[0].size() == fulls.size());
}

TEST_CASE("classification members partition the input in order",
          "[isomorphism]") {
  const Design l18 = builtin_l18();
  std::vector<Design> designs;
  for (Variant& v : enumerate_variants(l18, {1, 2, 3})) {
    designs.push_back(std::move(v.design));
  }
  const GeomPartition part = classify_geometric(designs);
  std::vector<char> seen(designs.size(), 0);
  for (const auto& members : part.members) {
    for (int i : members) {
      REQUIRE(!seen[i]);
      seen[i] = 1;
    }
  }
  for (char s : seen) REQUIRE(s == 1);

  // Every member matches its class representative and no other.
  for (size_t c = 0; c < part.members.size(); ++c) {
    for (int i : part.members[c]) {
      for (size_t d = 0; d < part.members.size(); ++d) {
        const bool same =
            geom_isomorphic(part.representatives[d], designs[i]).has_value();
        REQUIRE(same == (c == d));
      }
    }
  }
}

TEST_CASE("equal wordlength patterns do not imply isomorphism",
          "[isomorphism]") {
  const Design l18 = builtin_l18();
  const Design a = project(l18, {1, 2, 3, 4});
  const Design b = project(l18, {1, 2, 5, 6});

  const WordlengthPattern beta_a =
      beta_wlp(coefficients(a, ContrastBasis(a.space())));
  const WordlengthPattern beta_b =
      beta_wlp(coefficients(b, ContrastBasis(b.space())));
  REQUIRE(compare_wlp(beta_a, beta_b, 1e-9) == WlpOrder::equal);
  REQUIRE_FALSE(geom_isomorphic(a, b).has_value());
}

TEST_CASE("incompatible spaces are rejected", "[isomorphism]") {
  const Design a = fixtures::fraction_sum();
  Design b(DesignSpace({3, 3}), {{0, 0}});
  REQUIRE_THROWS_AS(geom_isomorphic(a, b), ShapeError);
  REQUIRE_THROWS_AS(comb_isomorphic(a, b), ShapeError);

  // Mixed-level reordering is allowed: (2,3) vs (3,2).
  Design c(DesignSpace({2, 3}), {{0, 0}, {1, 2}});
  Design d(DesignSpace({3, 2}), {{0, 0}, {2, 1}});
  const std::optional<GeomTransform> w = geom_isomorphic(c, d);
  REQUIRE(w.has_value());
  REQUIRE(apply_geom(d, *w).same_runs(c));
}
