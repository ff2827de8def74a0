#pragma once

#include <cmath>
#include <utility>

#include "omegalab/core.hpp"

// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + y, with its closed-form inverse.
// The choice is load-bearing: every pinned enumeration order in the test
// suite and every canonical domain bijection assumes this polynomial.
//
// Codes enumerate the plane by anti-diagonals: within the diagonal
// x + y = s, the code increases with y, from <s,0> to <0,s>.

namespace omegalab {

using u128 = unsigned __int128;

inline constexpr u128 triangle(u128 n) { return n * (n + 1) / 2; }

inline Nat pair_code(Nat x, Nat y) {
  if (x > kNatMax - y) throw CapacityError("pair: x + y exceeds 64-bit range");
  const u128 code = triangle(x + y) + y;
  if (code > kNatMax) throw CapacityError("pair: code exceeds 64-bit range");
  return static_cast<Nat>(code);
}

// Total inverse. The double estimate of the diagonal index can be off by a
// couple of units near 2^64; the adjustment loops make it exact.
inline std::pair<Nat, Nat> unpair_code(Nat code) {
  Nat s = static_cast<Nat>((std::sqrt(8.0 * static_cast<double>(code) + 1.0) - 1.0) / 2.0);
  while (triangle(s) > code) --s;
  while (triangle(s + 1) <= code) ++s;
  const Nat y = code - static_cast<Nat>(triangle(s));
  return {s - y, y};
}

inline Nat left_of(Nat code) { return unpair_code(code).first; }
inline Nat right_of(Nat code) { return unpair_code(code).second; }

// Walks codes 0, 1, 2, ... while maintaining the decoded pair, so a linear
// scan over codes pays one sqrt at setup instead of one per code.
class PairWalker {
 public:
  PairWalker() : code_(0), x_(0), y_(0) {}

  explicit PairWalker(Nat start) : code_(start) {
    auto [x, y] = unpair_code(start);
    x_ = x;
    y_ = y;
  }

  Nat code() const { return code_; }
  Nat x() const { return x_; }
  Nat y() const { return y_; }

  void advance() {
    ++code_;
    if (x_ == 0) {
      x_ = y_ + 1;  // next anti-diagonal
      y_ = 0;
    } else {
      --x_;
      ++y_;
    }
  }

 private:
  Nat code_;
  Nat x_;
  Nat y_;
};

}  // namespace omegalab
