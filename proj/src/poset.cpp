#include "ordfix/poset.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "ordfix/hypothesis.hpp"

namespace ordfix {
namespace {

void check_size(int n) {
  if (n < 1 || n > FinitePoset::kMaxElements) {
    throw std::invalid_argument("poset size must be in [1, 64], got " +
                                std::to_string(n));
  }
}

void check_labels(int n, const std::vector<std::string>& labels) {
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw std::invalid_argument("expected " + std::to_string(n) +
                                " labels, got " +
                                std::to_string(labels.size()));
  }
}

std::string label_of(int x, const std::vector<std::string>& labels) {
  return labels.empty() ? std::to_string(x) : labels[static_cast<std::size_t>(x)];
}

// Shortest cover path x -> ... -> y, by BFS over the cover digraph.
std::vector<int> cover_path(int n, const std::vector<std::uint64_t>& adj,
                            int from, int to) {
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::queue<int> q;
  q.push(from);
  parent[static_cast<std::size_t>(from)] = from;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == to) break;
    for (std::uint64_t b = adj[static_cast<std::size_t>(v)]; b != 0;
         b &= b - 1) {
      int w = __builtin_ctzll(b);
      if (parent[static_cast<std::size_t>(w)] < 0) {
        parent[static_cast<std::size_t>(w)] = v;
        q.push(w);
      }
    }
  }
  std::vector<int> path;
  for (int v = to; v != from; v = parent[static_cast<std::size_t>(v)]) {
    if (v < 0) return {};
    path.push_back(v);
  }
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

std::string format_cycle(const std::vector<int>& loop,
                         const std::vector<std::string>& labels) {
  std::string out = "cycle: ";
  for (std::size_t i = 0; i < loop.size(); ++i) {
    if (i > 0) out += " -> ";
    out += label_of(loop[i], labels);
  }
  return out;
}

}  // namespace

FinitePoset FinitePoset::from_covers(int n,
                                     std::span<const std::pair<int, int>> covers,
                                     std::vector<std::string> labels) {
  check_size(n);
  check_labels(n, labels);

  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n), 0);
  for (const auto& [i, j] : covers) {
    if (i < 0 || i >= n || j < 0 || j >= n) {
      throw std::invalid_argument("cover pair (" + std::to_string(i) + ", " +
                                  std::to_string(j) +
                                  ") has an index outside 0.." +
                                  std::to_string(n - 1));
    }
    if (i == j) {
      throw std::invalid_argument("cover pair (" + std::to_string(i) + ", " +
                                  std::to_string(j) +
                                  ") relates an element to itself; " +
                                  format_cycle({i, j}, labels));
    }
    adj[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
  }

  // Reflexive-transitive closure, Warshall-style on bit rows.
  std::vector<std::uint64_t> up(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    up[static_cast<std::size_t>(x)] =
        adj[static_cast<std::size_t>(x)] | (std::uint64_t{1} << x);
  }
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) {
      if ((up[static_cast<std::size_t>(x)] >> k) & 1u) {
        up[static_cast<std::size_t>(x)] |= up[static_cast<std::size_t>(k)];
      }
    }
  }

  // Antisymmetry of the closure; a violation is a cycle in the covers.
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      bool xy = (up[static_cast<std::size_t>(x)] >> y) & 1u;
      bool yx = (up[static_cast<std::size_t>(y)] >> x) & 1u;
      if (xy && yx) {
        std::vector<int> loop = cover_path(n, adj, x, y);
        std::vector<int> back = cover_path(n, adj, y, x);
        loop.insert(loop.end(), back.begin() + 1, back.end());
        throw std::invalid_argument("cover relation is cyclic; " +
                                    format_cycle(loop, labels));
      }
    }
  }

  std::vector<std::uint64_t> down(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    for (std::uint64_t b = up[static_cast<std::size_t>(x)]; b != 0;
         b &= b - 1) {
      down[static_cast<std::size_t>(__builtin_ctzll(b))] |=
          std::uint64_t{1} << x;
    }
  }
  return FinitePoset(n, std::move(up), std::move(down), std::move(labels));
}

FinitePoset FinitePoset::from_relation(int n,
                                       std::span<const std::uint8_t> leq,
                                       std::vector<std::string> labels) {
  check_size(n);
  check_labels(n, labels);
  if (leq.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw std::invalid_argument("relation matrix must have n*n entries");
  }

  std::vector<std::uint64_t> up(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (leq[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) + y]) {
        up[static_cast<std::size_t>(x)] |= std::uint64_t{1} << y;
      }
    }
  }

  for (int x = 0; x < n; ++x) {
    if (!((up[static_cast<std::size_t>(x)] >> x) & 1u)) {
      throw std::invalid_argument("relation is not reflexive at element " +
                                  label_of(x, labels));
    }
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      bool xy = (up[static_cast<std::size_t>(x)] >> y) & 1u;
      bool yx = (up[static_cast<std::size_t>(y)] >> x) & 1u;
      if (xy && yx) {
        throw std::invalid_argument("relation is not antisymmetric on {" +
                                    label_of(x, labels) + ", " +
                                    label_of(y, labels) + "}");
      }
    }
  }
  for (int x = 0; x < n; ++x) {
    for (std::uint64_t b = up[static_cast<std::size_t>(x)]; b != 0;
         b &= b - 1) {
      int y = __builtin_ctzll(b);
      if (up[static_cast<std::size_t>(y)] & ~up[static_cast<std::size_t>(x)]) {
        int z = __builtin_ctzll(up[static_cast<std::size_t>(y)] &
                                ~up[static_cast<std::size_t>(x)]);
        throw std::invalid_argument(
            "relation is not transitive: " + label_of(x, labels) + " ⪯ " +
            label_of(y, labels) + " ⪯ " + label_of(z, labels) + " but not " +
            label_of(x, labels) + " ⪯ " + label_of(z, labels));
      }
    }
  }

  std::vector<std::uint64_t> down(static_cast<std::size_t>(n), 0);
  for (int x = 0; x < n; ++x) {
    for (std::uint64_t b = up[static_cast<std::size_t>(x)]; b != 0;
         b &= b - 1) {
      down[static_cast<std::size_t>(__builtin_ctzll(b))] |=
          std::uint64_t{1} << x;
    }
  }
  return FinitePoset(n, std::move(up), std::move(down), std::move(labels));
}

std::string FinitePoset::label(int x) const {
  check_index(x);
  return label_of(x, labels_);
}

Subset interval_members(const FinitePoset& p, const OrderInterval& iv) {
  switch (iv.kind) {
    case OrderInterval::Kind::UpSet:
      return p.up_set(iv.lo);
    case OrderInterval::Kind::Closed:
      return Subset(p.size(), p.up_bits(iv.lo) & p.down_bits(iv.hi));
  }
  throw std::logic_error("unreachable interval kind");
}

Subset intersect_family(const FinitePoset& p,
                        std::span<const OrderInterval> family) {
  Subset acc = Subset::full(p.size());
  for (const OrderInterval& iv : family) {
    acc &= interval_members(p, iv);
  }
  return acc;
}

bool is_directed(const FinitePoset& p, const Subset& j) {
  if (j.universe() != p.size()) {
    throw std::invalid_argument("subset universe does not match the poset");
  }
  const auto xs = j.members();
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t b = a + 1; b < xs.size(); ++b) {
      if ((p.up_bits(xs[a]) & p.up_bits(xs[b]) & j.bits()) == 0) return false;
    }
  }
  return true;
}

Subset upper_bounds(const FinitePoset& p, const Subset& j) {
  if (j.universe() != p.size()) {
    throw std::invalid_argument("subset universe does not match the poset");
  }
  std::uint64_t acc = Subset::full(p.size()).bits();
  for (std::uint64_t b = j.bits(); b != 0; b &= b - 1) {
    acc &= p.up_bits(__builtin_ctzll(b));
  }
  return Subset(p.size(), acc);
}

std::optional<int> supremum(const FinitePoset& p, const Subset& j) {
  const Subset ub = upper_bounds(p, j);
  for (std::uint64_t b = ub.bits(); b != 0; b &= b - 1) {
    int m = __builtin_ctzll(b);
    if ((ub.bits() & ~p.up_bits(m)) == 0) return m;  // m below every bound
  }
  return std::nullopt;
}

int supremum_via_intervals(const FinitePoset& p, const Subset& j) {
  if (j.universe() != p.size()) {
    throw std::invalid_argument("subset universe does not match the poset");
  }
  if (j.empty()) {
    throw HypothesisError(hypothesis::kNonempty,
                          "the interval construction intersects over the "
                          "members of J, so J must be nonempty");
  }
  if (!is_directed(p, j)) {
    throw HypothesisError(hypothesis::kDirected,
                          "subset has a pair with no upper bound inside it");
  }

  std::vector<OrderInterval> cones;
  for (int x : j.members()) cones.push_back(OrderInterval::up_set(x));
  const Subset common_upper = intersect_family(p, cones);
  if (common_upper.empty()) {
    throw std::logic_error(
        "directed subset has empty upper-cone intersection; the poset "
        "invariants are broken");
  }

  std::vector<OrderInterval> brackets;
  for (int x : j.members()) {
    for (int z : common_upper.members()) {
      brackets.push_back(OrderInterval::closed(x, z));
    }
  }
  const Subset pinch = intersect_family(p, brackets);
  if (pinch.count() != 1) {
    throw std::logic_error("bracket intersection has " +
                           std::to_string(pinch.count()) +
                           " elements, expected a singleton; the poset "
                           "invariants are broken");
  }
  return pinch.members().front();
}

Subset maximal_elements(const FinitePoset& p, const Subset& j) {
  if (j.universe() != p.size()) {
    throw std::invalid_argument("subset universe does not match the poset");
  }
  Subset out(p.size());
  for (std::uint64_t b = j.bits(); b != 0; b &= b - 1) {
    int m = __builtin_ctzll(b);
    std::uint64_t strictly_above = p.up_bits(m) & ~(std::uint64_t{1} << m);
    if ((strictly_above & j.bits()) == 0) out.add(m);
  }
  return out;
}

bool has_fip(const FinitePoset& p, std::span<const OrderInterval> family) {
  const std::size_t k = family.size();
  if (k == 0) return true;  // vacuous

  std::vector<std::uint64_t> sets;
  sets.reserve(k);
  for (const OrderInterval& iv : family) {
    sets.push_back(interval_members(p, iv).bits());
  }

  constexpr std::size_t kBruteLimit = 20;
  if (k <= kBruteLimit) {
    for (std::uint64_t sub = 1; sub < (std::uint64_t{1} << k); ++sub) {
      std::uint64_t acc = Subset::full(p.size()).bits();
      for (std::uint64_t b = sub; b != 0; b &= b - 1) {
        acc &= sets[static_cast<std::size_t>(__builtin_ctzll(b))];
      }
      if (acc == 0) return false;
    }
    return true;
  }

  // A finite family is one of its own finite subfamilies, so beyond the
  // brute-force limit the property reduces to the total intersection.
  std::uint64_t acc = Subset::full(p.size()).bits();
  for (std::uint64_t s : sets) acc &= s;
  return acc != 0;
}

}  // namespace ordfix
