#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "omegalab/core.hpp"
#include "omegalab/reductions.hpp"

// Brute-force ground truth on finite universes {0..n-1}. Exhaustive sweeps
// over all n^n function tables validate the class algebra the rest of the
// library relies on, and supply expected values cheap enough to recompute in
// tests. Caps are strict: n <= 4 keeps the all-pairs sweep at 65536 pairs.

namespace omegalab {

using FunctionTable = std::vector<Nat>;

inline constexpr Nat kUniverseCap = 4;

struct TableClassification {
  bool injective;
  Nat max_preimage;
};

inline TableClassification classify_table(const FunctionTable& table) {
  const Nat n = table.size();
  std::vector<Nat> fiber(static_cast<std::size_t>(n), 0);
  Nat max_preimage = 0;
  for (Nat value : table) {
    if (value >= n) throw std::invalid_argument("classify_table: entry out of universe");
    max_preimage = std::max(max_preimage, ++fiber[static_cast<std::size_t>(value)]);
  }
  return TableClassification{max_preimage <= 1, max_preimage};
}

namespace detail {

// Visits all base^len tables in lexicographic order.
template <typename Visit>
void for_each_table(Nat len, Nat base, Visit visit) {
  FunctionTable table(static_cast<std::size_t>(len), 0);
  while (true) {
    visit(table);
    std::size_t pos = table.size();
    while (pos > 0) {
      --pos;
      if (++table[pos] < base) break;
      table[pos] = 0;
      if (pos == 0) return;
    }
    if (len == 0) return;
  }
}

inline Nat encode_table(const FunctionTable& table, Nat base) {
  Nat code = 0;
  for (Nat entry : table) code = code * base + entry;
  return code;
}

}  // namespace detail

// For every pair of tables (f, g) on {0..n-1}: the composed fiber bound is
// at most the product of the factors' bounds, and injectivity is preserved
// under composition. Window = number of pairs swept.
inline Verdict composition_rule_check(Nat n) {
  if (n < 1 || n > kUniverseCap) {
    throw std::invalid_argument("composition_rule_check: n must be in [1..4]");
  }
  std::vector<FunctionTable> tables;
  detail::for_each_table(n, n, [&](const FunctionTable& t) { tables.push_back(t); });
  Nat pairs = 0;
  for (const auto& f : tables) {
    const auto cf = classify_table(f);
    for (const auto& g : tables) {
      const auto cg = classify_table(g);
      FunctionTable composed(static_cast<std::size_t>(n));
      for (Nat x = 0; x < n; ++x) {
        composed[static_cast<std::size_t>(x)] =
            g[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])];
      }
      const auto cc = classify_table(composed);
      ++pairs;
      const bool bound_ok = cc.max_preimage <= cf.max_preimage * cg.max_preimage;
      const bool injective_ok = !(cf.injective && cg.injective) || cc.injective;
      if (!bound_ok || !injective_ok) {
        return Verdict::refute(
            pairs, Counterexample{{detail::encode_table(f, n), detail::encode_table(g, n)},
                                  {cc.max_preimage, cf.max_preimage * cg.max_preimage}});
      }
    }
  }
  return Verdict::evidence(pairs);
}

// Every map from k+1 points into k slots has a collision. The exhaustive run
// documents the base fact the chain audit leans on; a refutation here is
// impossible. Window = k^(k+1) maps.
inline Verdict pigeonhole_fact_check(Nat k, Nat n) {
  if (k < 1) throw std::invalid_argument("pigeonhole_fact_check: k must be >= 1");
  if (k + 1 > n) throw std::invalid_argument("pigeonhole_fact_check: requires k+1 <= n");
  Nat maps = 0;
  std::optional<Counterexample> refutation;
  detail::for_each_table(k + 1, k, [&](const FunctionTable& t) {
    ++maps;
    if (refutation) return;
    bool collides = false;
    for (std::size_t i = 0; i < t.size() && !collides; ++i) {
      for (std::size_t j = i + 1; j < t.size(); ++j) {
        if (t[i] == t[j]) {
          collides = true;
          break;
        }
      }
    }
    if (!collides) refutation = Counterexample{{detail::encode_table(t, k)}, {}};
  });
  if (refutation) return Verdict::refute(maps, *refutation);
  return Verdict::evidence(maps);
}

struct ExhaustiveReduction {
  bool reducible;
  std::optional<FunctionTable> witness;  // lexicographically least, when reducible
};

namespace detail {

inline bool mask_bit(Nat mask, Nat x) { return (mask >> x) & 1u; }

inline bool table_in_class(const TableClassification& c, const ReductionClass& cls) {
  switch (cls.tag()) {
    case ReductionClass::Tag::OneOne:
      return c.injective;
    case ReductionClass::Tag::BoundedFiniteOne:
      return c.max_preimage <= cls.bound();
    case ReductionClass::Tag::FiniteOne:
    case ReductionClass::Tag::ManyOne:
      return true;  // every table on a finite universe is finite-one
  }
  return false;
}

}  // namespace detail

// Does some table of the given class preserve membership between the masks?
// Bit x of a mask is the membership of x. Returns the least witness.
inline ExhaustiveReduction reduces_exhaustive(Nat a_mask, Nat b_mask,
                                              const ReductionClass& cls, Nat n) {
  if (n < 1 || n > kUniverseCap) {
    throw std::invalid_argument("reduces_exhaustive: n must be in [1..4]");
  }
  if (a_mask >> n || b_mask >> n) {
    throw std::invalid_argument("reduces_exhaustive: mask wider than the universe");
  }
  ExhaustiveReduction result{false, std::nullopt};
  detail::for_each_table(n, n, [&](const FunctionTable& t) {
    if (result.reducible) return;
    if (!detail::table_in_class(classify_table(t), cls)) return;
    for (Nat x = 0; x < n; ++x) {
      if (detail::mask_bit(a_mask, x) !=
          detail::mask_bit(b_mask, t[static_cast<std::size_t>(x)])) {
        return;
      }
    }
    result = ExhaustiveReduction{true, t};
  });
  return result;
}

}  // namespace omegalab
