#include "ordfix/enumerate.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace ordfix {
namespace {

// Off-diagonal pair indices in row-major order, so that ascending relation
// masks yield a fixed lexicographic enumeration.
int pair_index(int n, int i, int j) { return i * (n - 1) + (j > i ? j - 1 : j); }

bool antisymmetric(int n, std::uint64_t mask) {
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      bool ij = (mask >> pair_index(n, i, j)) & 1u;
      bool ji = (mask >> pair_index(n, j, i)) & 1u;
      if (ij && ji) return false;
    }
  }
  return true;
}

}  // namespace

void enumerate_posets(int n,
                      const std::function<void(const FinitePoset&)>& yield,
                      int cap) {
  if (n < 1) throw std::invalid_argument("poset size must be positive");
  if (n > cap) {
    throw std::invalid_argument("poset enumeration size " + std::to_string(n) +
                                " exceeds the cap " + std::to_string(cap));
  }

  const int pair_bits = n * (n - 1);
  std::vector<std::uint8_t> rel(static_cast<std::size_t>(n) *
                                static_cast<std::size_t>(n));
  std::uint64_t rows[FinitePoset::kMaxElements];

  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pair_bits);
       ++mask) {
    if (!antisymmetric(n, mask)) continue;

    for (int i = 0; i < n; ++i) {
      std::uint64_t row = std::uint64_t{1} << i;
      for (int j = 0; j < n; ++j) {
        if (i != j && ((mask >> pair_index(n, i, j)) & 1u)) {
          row |= std::uint64_t{1} << j;
        }
      }
      rows[i] = row;
    }

    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i) {
      for (std::uint64_t b = rows[i]; b != 0; b &= b - 1) {
        if (rows[__builtin_ctzll(b)] & ~rows[i]) {
          transitive = false;
          break;
        }
      }
    }
    if (!transitive) continue;

    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        rel[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + j] =
            static_cast<std::uint8_t>((rows[i] >> j) & 1u);
      }
    }
    yield(FinitePoset::from_relation(n, rel));
  }
}

std::uint64_t count_posets(int n, int cap) {
  std::uint64_t count = 0;
  enumerate_posets(n, [&count](const FinitePoset&) { ++count; }, cap);
  return count;
}

void enumerate_monotone_maps(
    const FinitePoset& p,
    const std::function<void(const MonotoneSelfMap&)>& yield,
    std::uint64_t budget) {
  const int n = p.size();
  std::uint64_t candidates = 1;
  for (int i = 0; i < n; ++i) {
    if (candidates > budget / static_cast<std::uint64_t>(n)) {
      throw std::invalid_argument(
          "map enumeration budget exceeded: n^n is above " +
          std::to_string(budget));
    }
    candidates *= static_cast<std::uint64_t>(n);
  }

  MonotoneSelfMap t;
  t.images.assign(static_cast<std::size_t>(n), 0);
  while (true) {
    if (check_monotone(p, t)) yield(t);
    int pos = n - 1;
    while (pos >= 0 && t.images[static_cast<std::size_t>(pos)] == n - 1) {
      t.images[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++t.images[static_cast<std::size_t>(pos)];
  }
}

std::vector<MonotoneSelfMap> monotone_maps(const FinitePoset& p,
                                           std::uint64_t budget) {
  std::vector<MonotoneSelfMap> out;
  enumerate_monotone_maps(
      p, [&out](const MonotoneSelfMap& t) { out.push_back(t); }, budget);
  return out;
}

namespace {

struct VerifyContext {
  VerificationReport* report;
};

void fail(VerifyContext& ctx, std::string check, int n, std::uint64_t poset_ix,
          std::string detail) {
  ctx.report->failures.push_back(
      {std::move(check), n, poset_ix, std::move(detail)});
}

// Every nonempty directed subset has a supremum; the interval construction
// agrees and the subset contains it.
void check_suprema(VerifyContext& ctx, const FinitePoset& p,
                   std::uint64_t poset_ix) {
  const int n = p.size();
  for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
    Subset j(n, bits);
    if (!is_directed(p, j)) continue;
    ++ctx.report->cases;
    ++ctx.report->supremum_cases;

    auto sup = supremum(p, j);
    if (!sup) {
      fail(ctx, "supremum-exists", n, poset_ix,
           "directed subset with bits " + std::to_string(bits) +
               " has no supremum");
      continue;
    }
    int via = -1;
    try {
      via = supremum_via_intervals(p, j);
    } catch (const std::exception& e) {
      fail(ctx, "supremum-intervals", n, poset_ix, e.what());
      continue;
    }
    if (via != *sup) {
      fail(ctx, "supremum-agreement", n, poset_ix,
           "interval construction gave " + std::to_string(via) +
               ", least upper bound is " + std::to_string(*sup));
    }
    if (!j.contains(*sup)) {
      fail(ctx, "supremum-membership", n, poset_ix,
           "directed subset does not contain its supremum " +
               std::to_string(*sup));
    }
  }
}

// Orbit stabilization, least-fixed-point agreement and maximality for every
// monotone map and witness.
void check_orbits(VerifyContext& ctx, const FinitePoset& p,
                  std::uint64_t poset_ix,
                  const std::vector<MonotoneSelfMap>& maps) {
  const int n = p.size();
  for (const MonotoneSelfMap& t : maps) {
    const Subset fixed = fixed_point_set(p, t);
    for (int c = 0; c < n; ++c) {
      if (!p.leq(c, t(c))) continue;
      ++ctx.report->cases;
      ++ctx.report->orbit_cases;

      FixedPointReport rep;
      try {
        rep = orbit_fixed_point(p, t, c);
      } catch (const std::exception& e) {
        fail(ctx, "orbit-run", n, poset_ix, e.what());
        continue;
      }
      if (rep.steps > n) {
        fail(ctx, "orbit-steps", n, poset_ix,
             "orbit took " + std::to_string(rep.steps) + " steps on " +
                 std::to_string(n) + " elements");
      }
      if (t(rep.result) != rep.result || !p.leq(c, rep.result)) {
        fail(ctx, "orbit-fixed-point", n, poset_ix,
             "orbit result " + std::to_string(rep.result) +
                 " is not a fixed point above the witness");
        continue;
      }
      for (int q : fixed.members()) {
        if (p.leq(c, q) && !p.leq(rep.result, q)) {
          fail(ctx, "orbit-least", n, poset_ix,
               "fixed point " + std::to_string(q) +
                   " above the witness is not above the orbit result " +
                   std::to_string(rep.result));
          break;
        }
      }
      const Subset above(p.size(), fixed.bits() & p.up_bits(c));
      if (maximal_elements(p, above).empty()) {
        fail(ctx, "orbit-maximal", n, poset_ix,
             "fixed point set above the witness has no maximal element");
      }
    }
  }
}

void check_family_case(VerifyContext& ctx, const FinitePoset& p,
                       std::uint64_t poset_ix, const MapFamily& family,
                       int witness) {
  const int n = p.size();
  FixedPointReport rep;
  try {
    rep = common_fixed_point(p, family, witness);
  } catch (const std::exception& e) {
    fail(ctx, "family-run", n, poset_ix, e.what());
    return;
  }
  for (const MonotoneSelfMap& t : family.maps) {
    if (t(rep.result) != rep.result) {
      fail(ctx, "family-common", n, poset_ix,
           "closure maximum " + std::to_string(rep.result) +
               " is not a common fixed point");
      return;
    }
  }
  if (!rep.fixed_points.contains(rep.result)) {
    fail(ctx, "family-membership", n, poset_ix,
         "closure maximum is missing from the brute-force common set");
  }
  if (rep.fixed_points.empty()) {
    fail(ctx, "family-nonempty", n, poset_ix,
         "brute-force common fixed point set is empty");
  }
  if (rep.maximal_fixed_points.empty()) {
    fail(ctx, "family-maximal", n, poset_ix,
         "common fixed point set has no maximal element");
  }
}

// Commuting pairs sharing a witness: every common witness of a validated
// pair is a case.
std::vector<std::pair<std::size_t, std::size_t>> validated_pairs(
    const FinitePoset& p, const std::vector<MonotoneSelfMap>& maps) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const int n = p.size();
  for (std::size_t a = 0; a < maps.size(); ++a) {
    for (std::size_t b = a; b < maps.size(); ++b) {
      bool commutes = true;
      for (int x = 0; x < n; ++x) {
        if (maps[a](maps[b](x)) != maps[b](maps[a](x))) {
          commutes = false;
          break;
        }
      }
      if (!commutes) continue;
      bool has_witness = false;
      for (int c = 0; c < n; ++c) {
        if (p.leq(c, maps[a](c)) && p.leq(c, maps[b](c))) {
          has_witness = true;
          break;
        }
      }
      if (has_witness) out.emplace_back(a, b);
    }
  }
  return out;
}

void run_pair_case(VerifyContext& ctx, const FinitePoset& p,
                   std::uint64_t poset_ix, const MonotoneSelfMap& s,
                   const MonotoneSelfMap& t, bool sampled) {
  MapFamily family{{s, t}};
  for (int c = 0; c < p.size(); ++c) {
    if (!p.leq(c, s(c)) || !p.leq(c, t(c))) continue;
    ++ctx.report->cases;
    if (sampled) {
      ++ctx.report->family_sampled_cases;
    } else {
      ++ctx.report->family_exhaustive_cases;
    }
    check_family_case(ctx, p, poset_ix, family, c);
  }
}

}  // namespace

VerificationReport exhaustive_verify(int n_max, const VerifyOptions& options) {
  if (n_max < 1 || n_max > kDefaultPosetCap) {
    throw std::invalid_argument("verification size must be in [1, " +
                                std::to_string(kDefaultPosetCap) + "]");
  }

  VerificationReport report;
  report.n_max = n_max;
  VerifyContext ctx{&report};

  const int map_max = std::min(n_max, options.map_enumeration_max);
  const int exhaustive_pair_max = std::min(map_max, options.map_enumeration_max - 1);

  std::uint64_t sampled_posets = 0;
  if (n_max >= options.map_enumeration_max && options.sample_target > 0) {
    sampled_posets = count_posets(options.map_enumeration_max);
  }
  const std::uint64_t pair_quota =
      sampled_posets == 0
          ? 0
          : (static_cast<std::uint64_t>(options.sample_target) +
             sampled_posets - 1) /
                sampled_posets;

  for (int n = 1; n <= n_max; ++n) {
    std::uint64_t poset_ix = 0;
    enumerate_posets(n, [&](const FinitePoset& p) {
      ++report.posets;
      const std::uint64_t ix = poset_ix++;

      check_suprema(ctx, p, ix);

      if (n > map_max) return;
      const std::vector<MonotoneSelfMap> maps = monotone_maps(p);
      check_orbits(ctx, p, ix, maps);

      if (n <= exhaustive_pair_max) {
        for (const auto& [a, b] : validated_pairs(p, maps)) {
          run_pair_case(ctx, p, ix, maps[a], maps[b], /*sampled=*/false);
        }
      } else if (n == options.map_enumeration_max && pair_quota > 0) {
        const auto pairs = validated_pairs(p, maps);
        // Every poset has at least the identity pair, so the quota is
        // always reachable by sampling with replacement.
        std::mt19937_64 rng(options.seed + ix);
        std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
        for (std::uint64_t k = 0; k < pair_quota; ++k) {
          const auto& [a, b] = pairs[pick(rng)];
          ++report.family_sampled_pairs;
          run_pair_case(ctx, p, ix, maps[a], maps[b], /*sampled=*/true);
        }
      }
    });
  }
  return report;
}

}  // namespace ordfix
