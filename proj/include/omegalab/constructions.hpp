#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omegalab/core.hpp"
#include "omegalab/pairing.hpp"
#include "omegalab/reductions.hpp"
#include "omegalab/sets.hpp"

// Set constructions over the code plane: block thickenings, the pyramid /
// calibrated / bounded-calibrated / full domains, the canonical rank-select
// bijection onto each domain, pullback sets along that bijection, and the
// explicit reduction witnesses each construction ships with.

namespace omegalab {

// --------------------------------------------------------------------------
// Thickening: stretch each member of A into a block of k consecutive codes.

inline OmegaSet thicken(const OmegaSet& a, Nat k) {
  if (k < 1) throw std::invalid_argument("thicken: k must be >= 1");
  return OmegaSet(SetKind::Thickening,
                  "thicken:k=" + std::to_string(k) + ",of=" + a.descriptor(),
                  a.rule_backed(), [a, k](Nat x) { return a.member(x / k); });
}

inline std::string thicken_descriptor(Nat k, const std::string& base) {
  return "thicken:k=" + std::to_string(k) + ",of=" + base;
}

// A_(k) -> A via x/k. Exactly k consecutive codes share each value, so the
// claimed class carries the global bound k.
inline Reduction thicken_witness_down(Nat k, const std::string& base = "A") {
  if (k < 1) throw std::invalid_argument("thicken_witness_down: k must be >= 1");
  return Reduction{[k](Nat x) { return x / k; }, ReductionClass::bounded(k),
                   thicken_descriptor(k, base), base};
}

// A -> A_(k) via kx, injective.
inline Reduction thicken_witness_up(Nat k, const std::string& base = "A") {
  if (k < 1) throw std::invalid_argument("thicken_witness_up: k must be >= 1");
  return Reduction{[k](Nat x) {
                     if (x > kNatMax / k) throw CapacityError("thicken witness: kx overflows");
                     return k * x;
                   },
                   ReductionClass::one_one(), base, thicken_descriptor(k, base)};
}

// A_(k) -> A_(k+1) via p(x) = (k+1)*floor(x/k) + (x mod k). Strictly
// increasing, and floor(p(x)/(k+1)) == floor(x/k), which is what makes it a
// valid embedding of the k-block structure into (k+1)-blocks.
inline Reduction chain_witness(Nat k, const std::string& base = "A") {
  if (k < 1) throw std::invalid_argument("chain_witness: k must be >= 1");
  return Reduction{[k](Nat x) {
                     const u128 v = static_cast<u128>(k + 1) * (x / k) + (x % k);
                     if (v > kNatMax) throw CapacityError("chain witness: p(x) overflows");
                     return static_cast<Nat>(v);
                   },
                   ReductionClass::one_one(), thicken_descriptor(k, base),
                   thicken_descriptor(k + 1, base)};
}

// --------------------------------------------------------------------------
// Decidable infinite domains of pairing codes.

enum class DomainKind { Pyramid, Calibrated, BoundedCalibrated, Full };

// How many i satisfy <x,i> in the domain, per column x.
struct ColumnProfile {
  bool infinite;
  Nat count;  // exact column size when finite

  bool operator==(const ColumnProfile&) const = default;
};

// A member of a domain: its code and the decoded column/row.
struct DomainEntry {
  Nat code;
  Nat x;
  Nat i;
};

namespace detail {

// Rank/select over a decidable set of codes, memoized as cumulative member
// counts per block of codes. The table is append-only: a unique lock guards
// extension, shared locks serve queries, and queries only ever read blocks
// published before the lock was taken. Scans walk the code plane with
// PairWalker so the predicate sees (x, i) directly.
class RankSelectCache {
 public:
  static constexpr Nat kBlockSize = 512;
  // Deep-select guard: an honest infinite domain meets any desk-scale target
  // far below this; hitting it means the query (or the domain) is off-scale.
  static constexpr Nat kCodeCap = Nat(1) << 44;

  explicit RankSelectCache(std::function<bool(Nat, Nat)> pred)
      : pred_(std::move(pred)) {}

  DomainEntry select(Nat n) const {
    if (n == kNatMax) throw CapacityError("select: index out of range");
    ensure_member_count(n + 1);
    std::shared_lock lock(mutex_);
    const auto it = std::lower_bound(cum_.begin(), cum_.end(), n + 1);
    const std::size_t block = static_cast<std::size_t>(it - cum_.begin());
    Nat seen = block == 0 ? 0 : cum_[block - 1];
    PairWalker w(static_cast<Nat>(block) * kBlockSize);
    for (Nat step = 0; step < kBlockSize; ++step, w.advance()) {
      if (pred_(w.x(), w.y()) && ++seen == n + 1) {
        return DomainEntry{w.code(), w.x(), w.y()};
      }
    }
    throw std::logic_error("rank/select table inconsistent");
  }

  // Member codes strictly below `code`. Membership of `code` itself is the
  // caller's concern.
  Nat rank(Nat code) const {
    const Nat block = code / kBlockSize;
    ensure_blocks(block);
    std::shared_lock lock(mutex_);
    Nat count = block == 0 ? 0 : cum_[static_cast<std::size_t>(block - 1)];
    PairWalker w(block * kBlockSize);
    for (; w.code() < code; w.advance()) {
      if (pred_(w.x(), w.y())) ++count;
    }
    return count;
  }

 private:
  void ensure_member_count(Nat target) const {
    {
      std::shared_lock lock(mutex_);
      if (!cum_.empty() && cum_.back() >= target) return;
    }
    std::unique_lock lock(mutex_);
    while (cum_.empty() || cum_.back() < target) append_block();
  }

  void ensure_blocks(Nat blocks) const {
    {
      std::shared_lock lock(mutex_);
      if (cum_.size() >= blocks) return;
    }
    std::unique_lock lock(mutex_);
    while (cum_.size() < blocks) append_block();
  }

  // Requires the unique lock.
  void append_block() const {
    if (frontier_.code() >= kCodeCap) {
      throw CapacityError("rank/select: scan exceeded code capacity");
    }
    Nat count = cum_.empty() ? 0 : cum_.back();
    for (Nat step = 0; step < kBlockSize; ++step, frontier_.advance()) {
      if (pred_(frontier_.x(), frontier_.y())) ++count;
    }
    cum_.push_back(count);
  }

  std::function<bool(Nat, Nat)> pred_;
  mutable std::shared_mutex mutex_;
  mutable std::vector<Nat> cum_;
  mutable PairWalker frontier_;
};

}  // namespace detail

class ComputableDomain {
 public:
  ComputableDomain(DomainKind kind, std::string descriptor,
                   std::function<bool(Nat, Nat)> pair_predicate,
                   std::function<ColumnProfile(Nat)> profile)
      : kind_(kind),
        descriptor_(std::move(descriptor)),
        pair_predicate_(std::move(pair_predicate)),
        profile_(std::move(profile)),
        cache_(std::make_shared<detail::RankSelectCache>(pair_predicate_)) {}

  DomainKind kind() const { return kind_; }
  const std::string& descriptor() const { return descriptor_; }

  bool contains(Nat code) const {
    const auto [x, i] = unpair_code(code);
    return pair_predicate_(x, i);
  }
  bool contains(Nat x, Nat i) const { return pair_predicate_(x, i); }

  ColumnProfile column_profile(Nat x) const { return profile_(x); }

  // sigma: the (n+1)-th smallest member code.
  Nat select(Nat n) const { return cache_->select(n).code; }
  DomainEntry select_entry(Nat n) const { return cache_->select(n); }

  // sigma^{-1}: the rank of a member code.
  Nat rank(Nat code) const {
    if (!contains(code)) {
      throw NotInDomainError("rank: code " + std::to_string(code) + " is not in " +
                             descriptor_);
    }
    return cache_->rank(code);
  }

 private:
  DomainKind kind_;
  std::string descriptor_;
  std::function<bool(Nat, Nat)> pair_predicate_;
  std::function<ColumnProfile(Nat)> profile_;
  std::shared_ptr<detail::RankSelectCache> cache_;  // copies share the memo
};

inline Nat sigma(const ComputableDomain& d, Nat n) { return d.select(n); }
inline Nat sigma_inv(const ComputableDomain& d, Nat code) { return d.rank(code); }

// The enumeration view named by the constructions: forward is select,
// inverse is rank. Copies share the underlying memo table.
class CanonicalBijection {
 public:
  explicit CanonicalBijection(ComputableDomain domain) : domain_(std::move(domain)) {}

  const ComputableDomain& domain() const { return domain_; }
  Nat forward(Nat n) const { return domain_.select(n); }
  Nat inverse(Nat code) const { return domain_.rank(code); }

 private:
  ComputableDomain domain_;
};

// Columns grow linearly: <x,i> present iff i <= x. Column x has x+1 members,
// so no global fiber bound survives.
inline ComputableDomain pyramid_domain() {
  return ComputableDomain(
      DomainKind::Pyramid, "pyramid", [](Nat x, Nat i) { return i <= x; },
      [](Nat x) { return ColumnProfile{false, x + 1}; });
}

namespace detail {

inline void require_rule_backed(const OmegaSet& s, const char* who) {
  if (!s.rule_backed()) {
    throw std::invalid_argument(std::string(who) +
                                ": index set must be rule-backed, got '" +
                                s.descriptor() + "'");
  }
}

}  // namespace detail

// <x,i> present for all i when x in S, only i = 0 otherwise. Infinite
// columns exactly on S. S must be rule-backed: a pseudo-random S would
// silently void the computable-set hypothesis the construction relies on.
inline ComputableDomain calibrated_domain(const OmegaSet& s) {
  detail::require_rule_backed(s, "calibrated_domain");
  return ComputableDomain(
      DomainKind::Calibrated, "calibrated(" + s.descriptor() + ")",
      [s](Nat x, Nat i) { return i == 0 || s.member(x); },
      [s](Nat x) {
        return s.member(x) ? ColumnProfile{true, 0} : ColumnProfile{false, 1};
      });
}

// Exactly two copies of x when x in S, one otherwise: column width at most 2.
inline ComputableDomain bounded_calibrated_domain(const OmegaSet& s) {
  detail::require_rule_backed(s, "bounded_calibrated_domain");
  return ComputableDomain(
      DomainKind::BoundedCalibrated, "bounded(" + s.descriptor() + ")",
      [s](Nat x, Nat i) { return i == 0 || (i == 1 && s.member(x)); },
      [s](Nat x) {
        return ColumnProfile{false, s.member(x) ? Nat(2) : Nat(1)};
      });
}

// Every code. Its canonical bijection is the identity on codes, so pullback
// over it realizes the plain cylinder A x omega.
inline ComputableDomain full_domain() {
  return ComputableDomain(
      DomainKind::Full, "full", [](Nat, Nat) { return true; },
      [](Nat) { return ColumnProfile{true, 0}; });
}

// --------------------------------------------------------------------------
// Pullback of A along the canonical enumeration of a domain.

inline OmegaSet pullback(const ComputableDomain& d, const OmegaSet& a) {
  return OmegaSet(SetKind::Pullback,
                  "pullback:domain=" + d.descriptor() + ",of=" + a.descriptor(),
                  a.rule_backed(),
                  [d, a](Nat n) { return a.member(d.select_entry(n).x); });
}

inline std::string pullback_descriptor(const ComputableDomain& d, const std::string& base) {
  return "pullback:domain=" + d.descriptor() + ",of=" + base;
}

// pullback -> A via q(n) = pi1(sigma(n)). The claimed class is read off the
// domain's column profile: width-2 columns bound fibers by 2, pyramid
// columns are finite but unbounded, infinite columns leave only many-one.
inline Reduction pullback_witness_q(const ComputableDomain& d, const std::string& base = "A") {
  ReductionClass cls = ReductionClass::many_one();
  switch (d.kind()) {
    case DomainKind::BoundedCalibrated:
      cls = ReductionClass::bounded(2);
      break;
    case DomainKind::Pyramid:
      cls = ReductionClass::finite_one();
      break;
    case DomainKind::Calibrated:
    case DomainKind::Full:
      break;
  }
  return Reduction{[d](Nat n) { return d.select_entry(n).x; }, cls,
                   pullback_descriptor(d, base), base};
}

// A -> pullback via r(x) = sigma^{-1}(<x,0>); injective because rank is.
// Well-defined on all four domain kinds: each keeps <x,0> for every x.
inline Reduction pullback_witness_r(const ComputableDomain& d, const std::string& base = "A") {
  return Reduction{[d](Nat x) { return d.rank(pair_code(x, 0)); },
                   ReductionClass::one_one(), base, pullback_descriptor(d, base)};
}

// S_k = { <k,i> : i in omega }: decidable, infinite, pairwise disjoint in k.
inline OmegaSet disjoint_family(Nat k) {
  return OmegaSet(SetKind::ExplicitRule, "column:k=" + std::to_string(k), true,
                  [k](Nat code) { return unpair_code(code).first == k; });
}

}  // namespace omegalab
