#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ordfix/fixpoint.hpp"
#include "ordfix/poset.hpp"

namespace ordfix {

inline constexpr int kDefaultPosetCap = 5;
inline constexpr std::uint64_t kDefaultMapBudget = std::uint64_t{1} << 22;

/// Yields every labeled poset on n elements exactly once, in a fixed
/// lexicographic order of the underlying relation. Candidates are all
/// assignments of the off-diagonal relation bits, filtered by antisymmetry
/// and transitivity. n beyond the cap is rejected.
void enumerate_posets(int n,
                      const std::function<void(const FinitePoset&)>& yield,
                      int cap = kDefaultPosetCap);

std::uint64_t count_posets(int n, int cap = kDefaultPosetCap);

/// Yields every monotone image table over p, in lexicographic order of the
/// table. The n^n candidate space must fit the budget.
void enumerate_monotone_maps(
    const FinitePoset& p,
    const std::function<void(const MonotoneSelfMap&)>& yield,
    std::uint64_t budget = kDefaultMapBudget);

std::vector<MonotoneSelfMap> monotone_maps(
    const FinitePoset& p, std::uint64_t budget = kDefaultMapBudget);

struct VerifyOptions {
  /// Total validated commuting pairs to sample at the sampled size. The
  /// quota is spread evenly over the posets of that size and sampling is
  /// with replacement, so the target is always met.
  int sample_target = 10000;
  std::uint64_t seed = 0x0fb5a7c3d2e19641ull;
  /// Largest size for full map enumeration; pair checks are exhaustive one
  /// size below and sampled at this size.
  int map_enumeration_max = 4;
};

struct VerifyFailure {
  std::string check;
  int n = 0;
  std::uint64_t poset_index = 0;
  std::string detail;
};

struct VerificationReport {
  int n_max = 0;
  std::uint64_t posets = 0;
  std::uint64_t cases = 0;
  std::vector<VerifyFailure> failures;

  // per-section counters, for reporting and tests
  std::uint64_t supremum_cases = 0;
  std::uint64_t orbit_cases = 0;
  std::uint64_t family_exhaustive_cases = 0;
  std::uint64_t family_sampled_pairs = 0;
  std::uint64_t family_sampled_cases = 0;
};

/// Exhaustive desk-scale verification over all labeled posets of size 1 to
/// n_max:
///   - every nonempty directed subset has a supremum, the interval
///     construction agrees with it, and the subset contains it;
///   - for every monotone map and witness, the orbit stabilizes within n
///     steps at the least fixed point above the witness, and the fixed point
///     set above the witness has a maximal element (sizes up to
///     map_enumeration_max);
///   - for commuting pairs with a common witness, the closure maximum is a
///     common fixed point and the brute-force common set is nonempty with a
///     maximal element (exhaustive below map_enumeration_max, sampled at it).
/// Failures are report content, not errors; a clean run has none.
VerificationReport exhaustive_verify(int n_max,
                                     const VerifyOptions& options = {});

}  // namespace ordfix
