#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

// Shared ground types: the 64-bit natural, the error taxonomy, and the
// keyed bit mixer behind every seeded pseudo-random object in the library.

namespace omegalab {

using Nat = std::uint64_t;

inline constexpr Nat kNatMax = std::numeric_limits<Nat>::max();

// Raised when a construction would leave the 64-bit natural range.
// Wrapping silently is never acceptable: it would corrupt pairing bijectivity.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by rank queries on codes outside the queried domain.
class NotInDomainError : public std::domain_error {
 public:
  explicit NotInDomainError(const std::string& what) : std::domain_error(what) {}
};

// Raised by the spec mini-language parser; carries the offending position.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// 64-bit finalizer (Murmur3 / splitmix style): all bits of the input affect
// all bits of the output.
inline Nat mix64(Nat z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

// Counter-mode keyed bit: bit(seed, index) is pure and random-access, so a
// seeded set's membership does not depend on query order.
inline bool keyed_bit(Nat seed, Nat index) {
  const Nat key = mix64(seed ^ 0x9e3779b97f4a7c15ULL);
  return (mix64(key ^ index) & 1u) != 0;
}

// Deterministic RNG stream for shuffles and generated corpora.
class SplitMix64 {
 public:
  explicit SplitMix64(Nat seed) : state_(seed) {}

  Nat next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    Nat z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform draw from [0, bound); bound must be nonzero.
  Nat next_below(Nat bound) { return next() % bound; }

 private:
  Nat state_;
};

}  // namespace omegalab
