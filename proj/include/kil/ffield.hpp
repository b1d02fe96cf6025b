#pragma once

#include <optional>
#include <utility>

#include "kil/common.hpp"

namespace kil {

// Exact arithmetic in F_p, p an odd prime. Residues are canonical values in
// [0, p-1] held in plain u64; p is capped below 2^32 so that any product of
// two residues fits a 64-bit word.
class Fp {
 public:
  static constexpr u64 kMaxModulus = (u64{1} << 32) - 1;

  explicit Fp(u64 p);

  u64 p() const { return p_; }

  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p_; }
  u64 pow(u64 a, u64 e) const;
  u64 inv(u64 a) const;
  u64 half(u64 a) const;  // division by 2, p odd

  // canonical residue of an arbitrary signed integer
  u64 reduce(i64 x) const {
    i64 r = x % static_cast<i64>(p_);
    return r < 0 ? static_cast<u64>(r + static_cast<i64>(p_)) : static_cast<u64>(r);
  }

  // Legendre symbol: 1 for nonzero squares, -1 for non-squares, 0 for 0
  int legendre(u64 a) const;

  // Both square roots {r, p-r} with r <= p-r, nullopt for non-residues;
  // sqrt(0) yields {0, 0}. Deterministic: Tonelli-Shanks seeded with the
  // smallest quadratic non-residue.
  std::optional<std::pair<u64, u64>> sqrt(u64 a) const;

  // Lexicographically least (a, b) with a^2 + b^2 = t. A solution exists
  // for every t when p is odd.
  std::pair<u64, u64> sum_two_squares(u64 t) const;

  u64 smallest_nonresidue() const { return nonresidue_; }

  static bool is_prime(u64 n);

  bool operator==(const Fp& o) const { return p_ == o.p_; }

 private:
  u64 p_;
  u64 nonresidue_;
};

}  // namespace kil
