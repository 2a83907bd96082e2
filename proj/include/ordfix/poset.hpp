#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordfix/subset.hpp"

namespace ordfix {

/// An order interval. Only two shapes exist: the up-set [a,→) and the closed
/// interval [a,b]. The down-set (←,b] is not a standalone shape; it appears
/// only as the filter that closes [a,b] from above.
struct OrderInterval {
  enum class Kind { UpSet, Closed };

  Kind kind = Kind::UpSet;
  int lo = 0;
  int hi = 0;  // meaningful for Closed only

  static OrderInterval up_set(int a) { return {Kind::UpSet, a, a}; }
  static OrderInterval closed(int a, int b) { return {Kind::Closed, a, b}; }
};

/// A finite partially ordered set on elements 0..n-1. The full relation is
/// closed transitively at construction and stored as per-element bitmasks, so
/// every relation query is O(1). At most 64 elements.
class FinitePoset {
 public:
  static constexpr int kMaxElements = Subset::kMaxUniverse;

  /// Builds a poset from cover pairs (i, j) meaning i is covered by j.
  /// Computes the reflexive-transitive closure and validates the axioms;
  /// cyclic input is rejected with a diagnostic naming one cycle.
  static FinitePoset from_covers(int n,
                                 std::span<const std::pair<int, int>> covers,
                                 std::vector<std::string> labels = {});

  /// Builds a poset from a full n×n relation (row-major, leq[x*n+y] != 0
  /// meaning x ⪯ y). Rejects relations that are not reflexive, antisymmetric
  /// and transitive.
  static FinitePoset from_relation(int n, std::span<const std::uint8_t> leq,
                                   std::vector<std::string> labels = {});

  int size() const { return n_; }

  bool leq(int x, int y) const {
    check_index(x);
    check_index(y);
    return (up_[static_cast<std::size_t>(x)] >> y) & 1u;
  }

  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }

  /// Bitmask of {y : x ⪯ y}, including x itself.
  std::uint64_t up_bits(int x) const {
    check_index(x);
    return up_[static_cast<std::size_t>(x)];
  }
  /// Bitmask of {y : y ⪯ x}, including x itself.
  std::uint64_t down_bits(int x) const {
    check_index(x);
    return down_[static_cast<std::size_t>(x)];
  }

  Subset up_set(int x) const { return Subset(n_, up_bits(x)); }
  Subset down_set(int x) const { return Subset(n_, down_bits(x)); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// The element's label, or its decimal index when no labels were given.
  std::string label(int x) const;

  bool same_relation(const FinitePoset& other) const {
    return n_ == other.n_ && up_ == other.up_;
  }

 private:
  FinitePoset(int n, std::vector<std::uint64_t> up,
              std::vector<std::uint64_t> down, std::vector<std::string> labels)
      : n_(n),
        up_(std::move(up)),
        down_(std::move(down)),
        labels_(std::move(labels)) {}

  void check_index(int x) const {
    if (x < 0 || x >= n_) {
      throw std::out_of_range("element index " + std::to_string(x) +
                              " outside poset of size " + std::to_string(n_));
    }
  }

  int n_ = 0;
  std::vector<std::uint64_t> up_;    // up_[x] = bitmask of [x,→)
  std::vector<std::uint64_t> down_;  // down_[x] = bitmask of (←,x]
  std::vector<std::string> labels_;
};

/// Exact member set of an interval: [a,→) = {x : a ⪯ x},
/// [a,b] = [a,→) ∩ (←,b]. A closed interval with a ⋠ b is empty.
Subset interval_members(const FinitePoset& p, const OrderInterval& iv);

/// Intersection of the member sets of a family of intervals. The empty
/// family intersects to the full ground set.
Subset intersect_family(const FinitePoset& p,
                        std::span<const OrderInterval> family);

/// True iff every pair of elements of j has an upper bound inside j. On a
/// finite poset this pairwise condition is equivalent to bounding every
/// finite subset. The empty set counts as directed.
bool is_directed(const FinitePoset& p, const Subset& j);

/// {u : x ⪯ u for all x in j}; the empty set is bounded by everything.
Subset upper_bounds(const FinitePoset& p, const Subset& j);

/// Least upper bound of j, or nullopt when none exists. Works for arbitrary
/// subsets; absence is a value, not an error.
std::optional<int> supremum(const FinitePoset& p, const Subset& j);

/// Supremum of a nonempty directed subset computed by interval
/// intersections: first the meet K of all up-sets [x,→) over x in j, then
/// the meet of all brackets [x,z] with x in j and z in K. That second meet
/// is a singleton — its element is the supremum. A non-singleton result
/// means the poset invariants are broken, which is reported as a logic
/// error rather than a domain failure.
int supremum_via_intervals(const FinitePoset& p, const Subset& j);

/// {m in j : no x in j with m ⪯ x and m ≠ x}. Returns all maximal elements,
/// unordered; the empty set maps to the empty set.
Subset maximal_elements(const FinitePoset& p, const Subset& j);

/// Finite intersection property: every subfamily has nonempty intersection.
/// Checked by brute force over subfamilies up to a size limit; beyond it the
/// whole family is itself one of the finite subfamilies, so the check
/// reduces to a nonempty total intersection.
bool has_fip(const FinitePoset& p, std::span<const OrderInterval> family);

}  // namespace ordfix
