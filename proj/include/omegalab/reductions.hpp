#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "omegalab/core.hpp"
#include "omegalab/sets.hpp"

// Reduction witnesses and window verification. A Reduction is a total map
// with a *claimed* class; nothing about the value certifies the claim.
// Soundness is established per window by the checks below, which return
// Refuted (with a replayable counterexample) or EvidenceUpTo(N) - never a
// proof of the infinitary statement.

namespace omegalab {

class ReductionClass {
 public:
  enum class Tag { OneOne, BoundedFiniteOne, FiniteOne, ManyOne };

  static ReductionClass one_one() { return ReductionClass(Tag::OneOne, 1); }
  static ReductionClass bounded(Nat c) {
    if (c < 1) throw std::invalid_argument("bounded finite-one bound must be >= 1");
    return ReductionClass(Tag::BoundedFiniteOne, c);
  }
  static ReductionClass finite_one() { return ReductionClass(Tag::FiniteOne, 0); }
  static ReductionClass many_one() { return ReductionClass(Tag::ManyOne, 0); }

  Tag tag() const { return tag_; }

  // Global fiber bound; meaningful for OneOne (1) and BoundedFiniteOne.
  Nat bound() const { return bound_; }

  // Partial order of class strength:
  //   OneOne < Bounded(1) < Bounded(2) < ... < FiniteOne < ManyOne.
  bool refines(const ReductionClass& other) const {
    if (tag_ == other.tag_) {
      if (tag_ == Tag::BoundedFiniteOne) return bound_ <= other.bound_;
      return true;
    }
    switch (other.tag_) {
      case Tag::ManyOne:
        return true;
      case Tag::FiniteOne:
        return tag_ == Tag::OneOne || tag_ == Tag::BoundedFiniteOne;
      case Tag::BoundedFiniteOne:
        return tag_ == Tag::OneOne;
      case Tag::OneOne:
        return false;
    }
    return false;
  }

  bool operator==(const ReductionClass& other) const {
    return tag_ == other.tag_ &&
           (tag_ != Tag::BoundedFiniteOne || bound_ == other.bound_);
  }
  bool operator!=(const ReductionClass& other) const { return !(*this == other); }

  std::string to_string() const {
    switch (tag_) {
      case Tag::OneOne:
        return "one-one";
      case Tag::BoundedFiniteOne:
        return "bounded(" + std::to_string(bound_) + ")";
      case Tag::FiniteOne:
        return "finite-one";
      case Tag::ManyOne:
        return "many-one";
    }
    return "?";
  }

 private:
  ReductionClass(Tag tag, Nat bound) : tag_(tag), bound_(bound) {}
  Tag tag_;
  Nat bound_;
};

struct Reduction {
  std::function<Nat(Nat)> map;
  ReductionClass claimed_class;
  std::string source;  // descriptor of the set reduced from
  std::string target;  // descriptor of the set reduced to
};

// The violating point(s) and what was observed there. Counterexamples must
// replay: feeding them back through the violated predicate yields false.
struct Counterexample {
  std::vector<Nat> inputs;
  std::vector<Nat> observed;
};

struct Verdict {
  enum class Status { Refuted, EvidenceUpTo };

  Status status;
  Nat window;
  std::optional<Counterexample> counterexample;
  std::string caveat;  // recorded limitation of the check, if any

  bool refuted() const { return status == Status::Refuted; }

  static Verdict refute(Nat window, Counterexample ce, std::string caveat = "") {
    return Verdict{Status::Refuted, window, std::move(ce), std::move(caveat)};
  }
  static Verdict evidence(Nat window, std::string caveat = "") {
    return Verdict{Status::EvidenceUpTo, window, std::nullopt, std::move(caveat)};
  }
};

// x in A <=> map(x) in B, for all x < N. Refutes with the least violation.
inline Verdict check_membership_preservation(const Reduction& r, const OmegaSet& a,
                                             const OmegaSet& b, Nat n) {
  for (Nat x = 0; x < n; ++x) {
    const Nat fx = r.map(x);
    if (a.member(x) != b.member(fx)) {
      return Verdict::refute(n, Counterexample{{x}, {fx}});
    }
  }
  return Verdict::evidence(n);
}

// Injectivity below N. Refutes with the pair (x, x'), x < x', map(x) == map(x').
inline Verdict check_injectivity(const Reduction& r, Nat n) {
  std::unordered_map<Nat, Nat> first_seen;
  first_seen.reserve(static_cast<std::size_t>(n));
  for (Nat x = 0; x < n; ++x) {
    const Nat fx = r.map(x);
    auto [it, inserted] = first_seen.emplace(fx, x);
    if (!inserted) {
      return Verdict::refute(n, Counterexample{{it->second, x}, {fx}});
    }
  }
  return Verdict::evidence(n);
}

// Fiber sizes of map over x < N, restricted to targets y < M.
inline std::vector<Nat> preimage_counts(const Reduction& r, Nat n, Nat m) {
  std::vector<Nat> counts(static_cast<std::size_t>(m), 0);
  for (Nat x = 0; x < n; ++x) {
    const Nat fx = r.map(x);
    if (fx < m) ++counts[static_cast<std::size_t>(fx)];
  }
  return counts;
}

inline constexpr const char* kPreimageCaveat =
    "counts over x < N are lower bounds on true preimage sizes";

// |map^{-1}(y)| <= c for y < M, counting only x < N. A forward sweep: the
// map value gives no computable inverse, so counts are lower bounds (the
// verdict carries that caveat). Refutes with the least overfull y.
inline Verdict check_preimage_bound(const Reduction& r, Nat c, Nat n, Nat m) {
  if (c < 1) throw std::invalid_argument("check_preimage_bound: c must be >= 1");
  const std::vector<Nat> counts = preimage_counts(r, n, m);
  for (Nat y = 0; y < m; ++y) {
    if (counts[static_cast<std::size_t>(y)] > c) {
      return Verdict::refute(n, Counterexample{{y}, {counts[static_cast<std::size_t>(y)]}},
                             kPreimageCaveat);
    }
  }
  return Verdict::evidence(n, kPreimageCaveat);
}

namespace detail {

// Class of g.map after f.map. Bounds multiply; one-one is bounded(1) when
// mixed; finite-one absorbs anything at or below it; else many-one.
inline ReductionClass compose_class(const ReductionClass& f, const ReductionClass& g) {
  using Tag = ReductionClass::Tag;
  const auto at_most_bounded = [](const ReductionClass& c) {
    return c.tag() == Tag::OneOne || c.tag() == Tag::BoundedFiniteOne;
  };
  const auto at_most_finite = [&](const ReductionClass& c) {
    return at_most_bounded(c) || c.tag() == Tag::FiniteOne;
  };
  if (f.tag() == Tag::OneOne && g.tag() == Tag::OneOne) return ReductionClass::one_one();
  if (at_most_bounded(f) && at_most_bounded(g)) {
    if (f.bound() > kNatMax / g.bound()) throw CapacityError("compose: fiber bound overflow");
    return ReductionClass::bounded(f.bound() * g.bound());
  }
  if (at_most_finite(f) && at_most_finite(g)) return ReductionClass::finite_one();
  return ReductionClass::many_one();
}

}  // namespace detail

inline Reduction compose(const Reduction& first, const Reduction& second) {
  if (first.target != second.source) {
    throw std::invalid_argument("compose: descriptor mismatch ('" + first.target +
                                "' vs '" + second.source + "')");
  }
  auto f = first.map;
  auto g = second.map;
  return Reduction{[f, g](Nat x) { return g(f(x)); },
                   detail::compose_class(first.claimed_class, second.claimed_class),
                   first.source, second.target};
}

}  // namespace omegalab
