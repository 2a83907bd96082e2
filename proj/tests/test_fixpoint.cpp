#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ordfix/enumerate.hpp"
#include "ordfix/fixpoint.hpp"
#include "ordfix/hypothesis.hpp"

using namespace ordfix;
using ordfix::testing::antichain;
using ordfix::testing::chain;
using ordfix::testing::diamond;
using ordfix::testing::vee;

namespace {

// Independent poset counter: filters every relation over all n*n bits,
// diagonal included, against the raw axiom definitions. Shares nothing with
// the library's off-diagonal enumerator.
std::uint64_t count_posets_by_full_filter(int n) {
  const int bits = n * n;
  std::uint64_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    auto rel = [&](int x, int y) {
      return (mask >> (x * n + y)) & 1u;
    };
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = rel(x, x);
    for (int x = 0; x < n && ok; ++x) {
      for (int y = 0; y < n && ok; ++y) {
        if (x != y && rel(x, y) && rel(y, x)) ok = false;
      }
    }
    for (int x = 0; x < n && ok; ++x) {
      for (int y = 0; y < n && ok; ++y) {
        for (int z = 0; z < n && ok; ++z) {
          if (rel(x, y) && rel(y, z) && !rel(x, z)) ok = false;
        }
      }
    }
    if (ok) ++count;
  }
  return count;
}

MonotoneSelfMap map_of(std::vector<int> images) { return {std::move(images)}; }

}  // namespace

TEST_CASE("monotonicity check") {
  const FinitePoset p = diamond();
  CHECK(check_monotone(p, map_of({1, 1, 3, 3})));   // union with {a}
  CHECK(check_monotone(p, map_of({0, 2, 1, 3})));   // swap automorphism
  CHECK_FALSE(check_monotone(chain(2), map_of({1, 0})));

  CHECK_THROWS_AS(check_monotone(p, map_of({0, 1})), std::invalid_argument);
  CHECK_THROWS_AS(check_monotone(p, map_of({0, 1, 2, 9})),
                  std::invalid_argument);
}

TEST_CASE("commutation check") {
  const FinitePoset p = diamond();
  MapFamily unions{{map_of({1, 1, 3, 3}), map_of({2, 3, 2, 3})}};
  CHECK(check_commuting(p, unions));

  MapFamily twice{{map_of({1, 1, 3, 3}), map_of({1, 1, 3, 3})}};
  CHECK(check_commuting(p, twice));

  MapFamily broken{{map_of({1, 1, 3, 3}), map_of({0, 0, 0, 0})}};
  CHECK_FALSE(check_commuting(p, broken));

  CHECK_THROWS_AS(check_commuting(p, MapFamily{}), std::invalid_argument);
}

TEST_CASE("fixed point sets") {
  const FinitePoset p = diamond();
  CHECK(fixed_point_set(p, map_of({1, 1, 3, 3})) == Subset::of(4, {1, 3}));
  CHECK(fixed_point_set(p, map_of({0, 1, 2, 3})) == Subset::full(4));
  CHECK(fixed_point_set(p, map_of({3, 3, 3, 3})) == Subset::of(4, {3}));
}

TEST_CASE("orbit iteration") {
  const FinitePoset p = diamond();

  SUBCASE("union map from the bottom") {
    const FixedPointReport rep = orbit_fixed_point(p, map_of({1, 1, 3, 3}), 0);
    CHECK(rep.trace == std::vector<int>{0, 1, 1});
    CHECK(rep.result == 1);
    CHECK(rep.steps == 1);
    CHECK(rep.fixed_points == Subset::of(4, {1, 3}));
    CHECK(rep.maximal_fixed_points == Subset::of(4, {3}));
  }

  SUBCASE("identity stabilizes immediately") {
    const FixedPointReport rep = orbit_fixed_point(p, map_of({0, 1, 2, 3}), 2);
    CHECK(rep.steps == 0);
    CHECK(rep.result == 2);
    CHECK(rep.trace == std::vector<int>{2, 2});
  }

  SUBCASE("three-step climb on a chain") {
    const FixedPointReport rep =
        orbit_fixed_point(chain(3), map_of({1, 2, 2}), 0);
    CHECK(rep.trace == std::vector<int>{0, 1, 2, 2});
    CHECK(rep.result == 2);
    CHECK(rep.steps == 2);
  }

  SUBCASE("witness precondition") {
    try {
      orbit_fixed_point(p, map_of({0, 0, 0, 0}), 1);  // 1 not below 0
      FAIL("missing witness accepted");
    } catch (const HypothesisError& e) {
      CHECK(std::string(e.condition()) == hypothesis::kWitness);
    }
  }

  SUBCASE("unvalidated non-monotone map is a logic error mid-orbit") {
    CHECK_THROWS_AS(orbit_fixed_point(chain(2), map_of({1, 0}), 0),
                    std::logic_error);
  }
}

TEST_CASE("family closure") {
  const FinitePoset p = diamond();
  MapFamily unions{{map_of({1, 1, 3, 3}), map_of({2, 3, 2, 3})}};
  CHECK(family_closure(p, unions, 0) == Subset::full(4));

  MapFamily id{{map_of({0, 1, 2, 3})}};
  CHECK(family_closure(p, id, 2) == Subset::of(4, {2}));

  MapFamily climb{{map_of({1, 2, 2})}};
  CHECK(family_closure(chain(3), climb, 0) == Subset::of(3, {0, 1, 2}));

  SUBCASE("the error names the offending map") {
    MapFamily mixed{{map_of({0, 1}), map_of({0, 0})}};
    try {
      family_closure(chain(2), mixed, 1);  // second map sends 1 below itself
      FAIL("missing witness accepted");
    } catch (const HypothesisError& e) {
      CHECK(std::string(e.condition()) == hypothesis::kWitness);
      CHECK(e.detail().find("map #1") != std::string::npos);
    }
  }
}

TEST_CASE("common fixed points of commuting families") {
  const FinitePoset p = diamond();

  SUBCASE("two union maps") {
    MapFamily unions{{map_of({1, 1, 3, 3}), map_of({2, 3, 2, 3})}};
    const FixedPointReport rep = common_fixed_point(p, unions, 0);
    CHECK(rep.result == 3);
    CHECK(rep.fixed_points == Subset::of(4, {3}));
    CHECK(rep.maximal_fixed_points == Subset::of(4, {3}));
    CHECK(rep.trace == std::vector<int>{0, 1, 2, 3});

    // order-free cross-check: intersect the individual fixed point sets
    Subset expect = fixed_point_set(p, unions.maps[0]);
    expect &= fixed_point_set(p, unions.maps[1]);
    CHECK(rep.fixed_points == expect);
  }

  SUBCASE("identity family") {
    MapFamily id{{map_of({0, 1, 2, 3})}};
    const FixedPointReport rep = common_fixed_point(p, id, 1);
    CHECK(rep.result == 1);
    CHECK(rep.fixed_points == Subset::full(4));
  }

  SUBCASE("two eventually-top chain maps") {
    MapFamily fam{{map_of({1, 2, 2}), map_of({2, 2, 2})}};
    REQUIRE(check_commuting(chain(3), fam));
    const FixedPointReport rep = common_fixed_point(chain(3), fam, 0);
    CHECK(rep.result == 2);
  }
}

TEST_CASE("poset enumeration counts and uniqueness") {
  CHECK(count_posets(1) == 1);
  CHECK(count_posets(2) == 3);
  CHECK(count_posets(3) == 19);
  CHECK(count_posets(4) == 219);

  for (int n = 1; n <= 3; ++n) {
    CHECK(count_posets(n) == count_posets_by_full_filter(n));
    std::set<std::vector<std::uint64_t>> seen;
    enumerate_posets(n, [&](const FinitePoset& p) {
      std::vector<std::uint64_t> key;
      for (int x = 0; x < n; ++x) key.push_back(p.up_bits(x));
      CHECK(seen.insert(key).second);  // exactly once
    });
  }

  CHECK_THROWS_AS(enumerate_posets(6, [](const FinitePoset&) {}),
                  std::invalid_argument);
}

TEST_CASE("monotone map enumeration") {
  std::vector<std::vector<int>> chain_maps;
  enumerate_monotone_maps(chain(2), [&](const MonotoneSelfMap& t) {
    chain_maps.push_back(t.images);
  });
  CHECK(chain_maps ==
        std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 1}});

  CHECK(monotone_maps(antichain(2)).size() == 4);  // no comparable pairs

  // filtered from all 256 candidates; frozen after the first run
  CHECK(monotone_maps(diamond()).size() == 36);

  CHECK_THROWS_AS(
      enumerate_monotone_maps(diamond(), [](const MonotoneSelfMap&) {},
                              /*budget=*/100),
      std::invalid_argument);
}

TEST_CASE("exhaustive verification is clean at small sizes") {
  const VerificationReport rep2 = exhaustive_verify(2);
  CHECK(rep2.failures.empty());
  CHECK(rep2.posets == 4);
  CHECK(rep2.cases > 0);

  const VerificationReport rep3 = exhaustive_verify(3);
  CHECK(rep3.failures.empty());
  CHECK(rep3.posets == 23);
  CHECK(rep3.supremum_cases > 0);
  CHECK(rep3.orbit_cases > 0);
  CHECK(rep3.family_exhaustive_cases > 0);
  CHECK(rep3.family_sampled_pairs == 0);  // sampling starts at size 4

  CHECK_THROWS_AS(exhaustive_verify(0), std::invalid_argument);
  CHECK_THROWS_AS(exhaustive_verify(9), std::invalid_argument);
}

TEST_CASE("orbit results are least fixed points above the witness") {
  // brute-force cross-check, independent of the verification harness
  for (int n = 1; n <= 3; ++n) {
    enumerate_posets(n, [&](const FinitePoset& p) {
      for (const MonotoneSelfMap& t : monotone_maps(p)) {
        for (int c = 0; c < n; ++c) {
          if (!p.leq(c, t(c))) continue;
          const FixedPointReport rep = orbit_fixed_point(p, t, c);
          CHECK(rep.steps <= n);
          CHECK(t(rep.result) == rep.result);
          CHECK(p.leq(c, rep.result));
          for (int q = 0; q < n; ++q) {
            if (t(q) == q && p.leq(c, q)) CHECK(p.leq(rep.result, q));
          }
        }
      }
    });
  }
}

TEST_CASE("maximal fixed points are nonempty when any fixed point exists") {
  for (int n = 1; n <= 3; ++n) {
    enumerate_posets(n, [&](const FinitePoset& p) {
      for (const MonotoneSelfMap& t : monotone_maps(p)) {
        const Subset fixed = fixed_point_set(p, t);
        if (!fixed.empty()) CHECK_FALSE(maximal_elements(p, fixed).empty());
      }
    });
  }
}
