#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace ordfix {

/// Subset of {0..n-1} over a fixed universe, stored as a bitmask.
/// Universes are capped at 64 elements; every structure in this library is
/// desk-scale, so a single word is enough and keeps set algebra cheap.
class Subset {
 public:
  static constexpr int kMaxUniverse = 64;

  Subset() = default;

  explicit Subset(int universe, std::uint64_t bits = 0)
      : universe_(universe), bits_(bits) {
    if (universe < 0 || universe > kMaxUniverse) {
      throw std::invalid_argument("subset universe must be in [0, 64], got " +
                                  std::to_string(universe));
    }
    if ((bits & ~mask(universe)) != 0) {
      throw std::invalid_argument("subset bits lie outside the universe");
    }
  }

  static Subset full(int universe) { return Subset(universe, mask(universe)); }

  static Subset of(int universe, std::initializer_list<int> xs) {
    Subset s(universe);
    for (int x : xs) s.add(x);
    return s;
  }

  int universe() const { return universe_; }
  std::uint64_t bits() const { return bits_; }

  bool contains(int x) const {
    check_index(x);
    return (bits_ >> x) & 1u;
  }
  void add(int x) {
    check_index(x);
    bits_ |= std::uint64_t{1} << x;
  }
  void remove(int x) {
    check_index(x);
    bits_ &= ~(std::uint64_t{1} << x);
  }

  bool empty() const { return bits_ == 0; }
  int count() const { return __builtin_popcountll(bits_); }

  /// Members in ascending order.
  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(__builtin_ctzll(b));
    }
    return out;
  }

  Subset& operator&=(const Subset& o) {
    check_universe(o);
    bits_ &= o.bits_;
    return *this;
  }
  Subset& operator|=(const Subset& o) {
    check_universe(o);
    bits_ |= o.bits_;
    return *this;
  }
  friend Subset operator&(Subset a, const Subset& b) { return a &= b; }
  friend Subset operator|(Subset a, const Subset& b) { return a |= b; }

  bool operator==(const Subset&) const = default;

 private:
  static std::uint64_t mask(int universe) {
    return universe == kMaxUniverse ? ~std::uint64_t{0}
                                    : (std::uint64_t{1} << universe) - 1;
  }
  void check_index(int x) const {
    if (x < 0 || x >= universe_) {
      throw std::out_of_range("element index " + std::to_string(x) +
                              " outside universe of size " +
                              std::to_string(universe_));
    }
  }
  void check_universe(const Subset& o) const {
    if (o.universe_ != universe_) {
      throw std::invalid_argument("subset universes differ");
    }
  }

  int universe_ = 0;
  std::uint64_t bits_ = 0;
};

}  // namespace ordfix
