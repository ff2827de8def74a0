#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "omegalab/core.hpp"

// Subsets of omega as immutable, total membership oracles. A set is a pure
// decidable predicate plus a descriptor in the spec mini-language, so any
// set the library builds can be named in a report and rebuilt from its name.

namespace omegalab {

enum class SetKind { ExplicitRule, SeededRandom, Complement, Pullback, Thickening };

class OmegaSet {
 public:
  OmegaSet(SetKind kind, std::string descriptor, bool rule_backed,
           std::function<bool(Nat)> rule)
      : kind_(kind),
        descriptor_(std::move(descriptor)),
        rule_backed_(rule_backed),
        rule_(std::move(rule)) {}

  bool member(Nat x) const { return rule_(x); }

  SetKind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }

  // True when membership derives from an explicit rule all the way down.
  // Seeded pseudo-random sets (and anything built on one) report false and
  // are rejected where a construction's hypotheses demand a computable set.
  bool rule_backed() const { return rule_backed_; }

 private:
  SetKind kind_;
  std::string descriptor_;
  bool rule_backed_;
  std::function<bool(Nat)> rule_;
};

// Window extraction: bit i is member(a, i) for i < n.
inline std::vector<bool> prefix(const OmegaSet& a, Nat n) {
  std::vector<bool> bits;
  bits.reserve(static_cast<std::size_t>(n));
  for (Nat i = 0; i < n; ++i) bits.push_back(a.member(i));
  return bits;
}

inline OmegaSet evens() {
  return OmegaSet(SetKind::ExplicitRule, "evens", true,
                  [](Nat x) { return x % 2 == 0; });
}

inline OmegaSet odds() {
  return OmegaSet(SetKind::ExplicitRule, "odds", true,
                  [](Nat x) { return x % 2 == 1; });
}

namespace detail {

inline Nat mulmod(Nat a, Nat b, Nat m) {
  return static_cast<Nat>(static_cast<u128>(a) * b % m);
}

inline Nat powmod(Nat base, Nat exp, Nat m) {
  Nat result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1u) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic Miller-Rabin, valid for the full 64-bit range.
inline bool is_prime(Nat n) {
  if (n < 2) return false;
  for (Nat p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  Nat d = n - 1;
  int r = 0;
  while ((d & 1u) == 0) {
    d >>= 1;
    ++r;
  }
  for (Nat a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    Nat x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

inline OmegaSet primes() {
  return OmegaSet(SetKind::ExplicitRule, "primes", true,
                  [](Nat x) { return detail::is_prime(x); });
}

inline OmegaSet empty_set() {
  return OmegaSet(SetKind::ExplicitRule, "empty", true, [](Nat) { return false; });
}

inline OmegaSet full_set() {
  return OmegaSet(SetKind::ExplicitRule, "full", true, [](Nat) { return true; });
}

inline OmegaSet explicit_set(std::vector<Nat> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  std::string desc = "explicit:[";
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i > 0) desc += ',';
    desc += std::to_string(elements[i]);
  }
  desc += ']';
  auto table = std::make_shared<const std::vector<Nat>>(std::move(elements));
  return OmegaSet(SetKind::ExplicitRule, std::move(desc), true, [table](Nat x) {
    return std::binary_search(table->begin(), table->end(), x);
  });
}

// Membership is bit x of a keyed counter-mode stream: deterministic,
// random-access, independent of query order. A stand-in for a "typical" set.
inline OmegaSet seeded_random_set(Nat seed) {
  return OmegaSet(SetKind::SeededRandom, "random:seed=" + std::to_string(seed),
                  false, [seed](Nat x) { return keyed_bit(seed, x); });
}

inline OmegaSet complement(const OmegaSet& a) {
  return OmegaSet(SetKind::Complement, "complement:of=" + a.descriptor(),
                  a.rule_backed(), [a](Nat x) { return !a.member(x); });
}

}  // namespace omegalab
