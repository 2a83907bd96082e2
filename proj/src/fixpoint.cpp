#include "ordfix/fixpoint.hpp"

#include <stdexcept>
#include <string>

#include "ordfix/hypothesis.hpp"

namespace ordfix {
namespace {

void validate_map(const FinitePoset& p, const MonotoneSelfMap& t) {
  if (static_cast<int>(t.images.size()) != p.size()) {
    throw std::invalid_argument("image table has " +
                                std::to_string(t.images.size()) +
                                " entries for a poset of size " +
                                std::to_string(p.size()));
  }
  for (int x = 0; x < p.size(); ++x) {
    int y = t(x);
    if (y < 0 || y >= p.size()) {
      throw std::invalid_argument("image of element " + std::to_string(x) +
                                  " is out of range: " + std::to_string(y));
    }
  }
}

void validate_family(const FinitePoset& p, const MapFamily& family) {
  if (family.maps.empty()) {
    throw std::invalid_argument("map family must be nonempty");
  }
  for (const MonotoneSelfMap& t : family.maps) validate_map(p, t);
}

}  // namespace

bool check_monotone(const FinitePoset& p, const MonotoneSelfMap& t) {
  validate_map(p, t);
  for (int x = 0; x < p.size(); ++x) {
    for (int y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) && !p.leq(t(x), t(y))) return false;
    }
  }
  return true;
}

bool check_commuting(const FinitePoset& p, const MapFamily& family) {
  validate_family(p, family);
  for (std::size_t a = 0; a < family.maps.size(); ++a) {
    for (std::size_t b = a + 1; b < family.maps.size(); ++b) {
      const MonotoneSelfMap& s = family.maps[a];
      const MonotoneSelfMap& t = family.maps[b];
      for (int x = 0; x < p.size(); ++x) {
        if (s(t(x)) != t(s(x))) return false;
      }
    }
  }
  return true;
}

Subset fixed_point_set(const FinitePoset& p, const MonotoneSelfMap& t) {
  validate_map(p, t);
  Subset out(p.size());
  for (int x = 0; x < p.size(); ++x) {
    if (t(x) == x) out.add(x);
  }
  return out;
}

FixedPointReport orbit_fixed_point(const FinitePoset& p,
                                   const MonotoneSelfMap& t, int start) {
  validate_map(p, t);
  if (!p.leq(start, t(start))) {
    throw HypothesisError(hypothesis::kWitness,
                          "start element " + p.label(start) +
                              " is not below its image " + p.label(t(start)));
  }

  FixedPointReport report;
  report.witness = start;
  report.trace.push_back(start);

  int x = start;
  const int cap = p.size() + 1;
  for (int k = 0;; ++k) {
    if (k > cap) {
      throw std::logic_error(
          "orbit exceeded the pigeonhole bound; the map was not validated "
          "monotone");
    }
    int next = t(x);
    if (!p.leq(x, next)) {
      throw std::logic_error("orbit step " + p.label(x) + " -> " +
                             p.label(next) +
                             " is not nondecreasing; the map was not "
                             "validated monotone");
    }
    report.trace.push_back(next);
    if (next == x) {
      report.steps = k;
      break;
    }
    x = next;
  }

  report.result = x;
  report.fixed_points = fixed_point_set(p, t);
  report.maximal_fixed_points = maximal_elements(p, report.fixed_points);
  return report;
}

Subset family_closure(const FinitePoset& p, const MapFamily& family,
                      int start) {
  validate_family(p, family);
  for (std::size_t i = 0; i < family.maps.size(); ++i) {
    const MonotoneSelfMap& t = family.maps[i];
    if (!p.leq(start, t(start))) {
      throw HypothesisError(
          hypothesis::kWitness,
          "map #" + std::to_string(i) + " moves start element " +
              p.label(start) + " to " + p.label(t(start)) +
              ", which is not above it");
    }
  }

  Subset closure(p.size());
  closure.add(start);
  std::vector<int> frontier{start};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (const MonotoneSelfMap& t : family.maps) {
        int y = t(x);
        if (!closure.contains(y)) {
          closure.add(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }

  for (int x : closure.members()) {
    for (const MonotoneSelfMap& t : family.maps) {
      if (!p.leq(x, t(x))) {
        throw std::logic_error("closure element " + p.label(x) +
                               " is not below its image " + p.label(t(x)) +
                               "; the family does not commute");
      }
    }
  }
  if (!is_directed(p, closure)) {
    throw std::logic_error(
        "closure of the witness is not directed; the family does not "
        "commute");
  }
  return closure;
}

FixedPointReport common_fixed_point(const FinitePoset& p,
                                    const MapFamily& family, int start) {
  const Subset closure = family_closure(p, family, start);

  int top = -1;
  for (int m : closure.members()) {
    if ((closure.bits() & ~p.down_bits(m)) == 0) {
      top = m;
      break;
    }
  }
  if (top < 0) {
    throw std::logic_error(
        "finite directed closure has no maximum; inputs are corrupted");
  }
  for (std::size_t i = 0; i < family.maps.size(); ++i) {
    if (family.maps[i](top) != top) {
      throw std::logic_error("closure maximum " + p.label(top) +
                             " is not fixed by map #" + std::to_string(i) +
                             "; the family does not commute");
    }
  }

  FixedPointReport report;
  report.witness = start;
  report.trace = closure.members();
  report.result = top;
  report.steps = 0;

  Subset common = Subset::full(p.size());
  for (const MonotoneSelfMap& t : family.maps) {
    common &= fixed_point_set(p, t);
  }
  report.fixed_points = common;
  report.maximal_fixed_points = maximal_elements(p, common);
  return report;
}

}  // namespace ordfix
