#pragma once

#include <vector>

#include "ordfix/poset.hpp"
#include "ordfix/subset.hpp"

namespace ordfix {

/// A self-map of a poset given by its image table: images[x] = T(x). The
/// table carries no poset reference; every operation takes the poset
/// explicitly and validates the table against it.
struct MonotoneSelfMap {
  std::vector<int> images;

  int operator()(int x) const { return images[static_cast<std::size_t>(x)]; }
};

/// A nonempty list of self-maps over a common poset. Pairwise commutation is
/// an invariant checked by check_commuting, not enforced by the type.
struct MapFamily {
  std::vector<MonotoneSelfMap> maps;
};

/// Outcome of a fixed-point search. For a single map the trace is the orbit
/// c, T(c), T²(c), ... including the terminating repeat; for a family it is
/// the closure of the witness under all maps, ascending. `result` is always
/// a member of `fixed_points`, and `maximal_fixed_points` is exactly the set
/// of maximal elements of `fixed_points`.
struct FixedPointReport {
  int witness = 0;
  std::vector<int> trace;
  int result = 0;
  int steps = 0;  // orbit applications before stabilization; 0 for families
  Subset fixed_points;
  Subset maximal_fixed_points;
};

/// True iff x ⪯ y implies images[x] ⪯ images[y] over all comparable pairs.
/// Malformed tables (wrong length, out-of-range entries) are rejected.
bool check_monotone(const FinitePoset& p, const MonotoneSelfMap& t);

/// True iff every pair of maps in the family commutes pointwise.
bool check_commuting(const FinitePoset& p, const MapFamily& family);

/// Brute-force {x : T(x) = x}.
Subset fixed_point_set(const FinitePoset& p, const MonotoneSelfMap& t);

/// Iterates start, T(start), T²(start), ... The witness start ⪯ T(start) is
/// required; each step is then asserted ⪯-nondecreasing and the sequence
/// stabilizes within size(p) steps (pigeonhole on a strictly increasing
/// chain). The result is the least fixed point above the witness. A
/// non-monotone map that was never validated shows up as a logic error
/// mid-orbit, not as a wrong answer.
FixedPointReport orbit_fixed_point(const FinitePoset& p,
                                   const MonotoneSelfMap& t, int start);

/// Smallest subset containing start and closed under every map of the
/// family, i.e. all values of map words applied to start. Requires
/// start ⪯ T(start) for every member (the error names the offending map).
/// The closure is asserted directed with x ⪯ T(x) throughout; a failed
/// assertion signals a non-commuting family admitted in error.
Subset family_closure(const FinitePoset& p, const MapFamily& family,
                      int start);

/// Common fixed point of a commuting family from a shared witness: the
/// maximum of the family closure. On a finite poset that closure is itself a
/// finite directed set containing its maximum, so no larger directed set
/// ever needs to be constructed; the maximum is already fixed by every map.
/// The report's fixed_points is the full common fixed point set, computed
/// independently by brute-force intersection.
FixedPointReport common_fixed_point(const FinitePoset& p,
                                    const MapFamily& family, int start);

}  // namespace ordfix
