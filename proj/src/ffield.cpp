#include "kil/ffield.hpp"

namespace kil {

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool Fp::is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // deterministic Miller-Rabin; these witnesses cover all n < 3.3e24
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Fp::Fp(u64 p) : p_(p), nonresidue_(0) {
  if (p == 2) fail(Err::EvenCharacteristic, "characteristic 2 is unsupported");
  if (p > kMaxModulus) fail(Err::InvalidConfig, "modulus too large for exact 64-bit products");
  if (!is_prime(p)) fail(Err::NotPrime, std::to_string(p) + " is not prime");
  for (u64 a = 2; a < p; ++a) {
    if (legendre(a) == -1) {
      nonresidue_ = a;
      break;
    }
  }
}

u64 Fp::pow(u64 a, u64 e) const { return powmod(a % p_, e, p_); }

u64 Fp::inv(u64 a) const {
  if (a % p_ == 0) fail(Err::DivisionByZero, "inverse of 0");
  return pow(a, p_ - 2);
}

u64 Fp::half(u64 a) const { return a % 2 == 0 ? a / 2 : (a + p_) / 2; }

int Fp::legendre(u64 a) const {
  a %= p_;
  if (a == 0) return 0;
  u64 e = pow(a, (p_ - 1) / 2);
  return e == 1 ? 1 : -1;
}

std::optional<std::pair<u64, u64>> Fp::sqrt(u64 a) const {
  a %= p_;
  if (a == 0) return std::pair<u64, u64>{0, 0};
  if (legendre(a) != 1) return std::nullopt;

  u64 r;
  if (p_ % 4 == 3) {
    r = pow(a, (p_ + 1) / 4);
  } else {
    // Tonelli-Shanks, p-1 = q * 2^s with q odd
    u64 q = p_ - 1;
    int s = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++s;
    }
    u64 z = pow(nonresidue_, q);
    u64 m = static_cast<u64>(s);
    u64 c = z;
    u64 t = pow(a, q);
    r = pow(a, (q + 1) / 2);
    while (t != 1) {
      u64 t2 = t;
      u64 i = 0;
      while (t2 != 1) {
        t2 = mul(t2, t2);
        ++i;
      }
      u64 b = c;
      for (u64 j = 0; j + i + 1 < m; ++j) b = mul(b, b);
      m = i;
      c = mul(b, b);
      t = mul(t, c);
      r = mul(r, b);
    }
  }
  u64 other = p_ - r;
  if (other < r) std::swap(r, other);
  return std::pair<u64, u64>{r, other};
}

std::pair<u64, u64> Fp::sum_two_squares(u64 t) const {
  t %= p_;
  for (u64 a = 0; a < p_; ++a) {
    u64 rest = sub(t, mul(a, a));
    if (auto r = sqrt(rest)) return {a, r->first};
  }
  fail(Err::InvalidConfig, "no two-square decomposition found");  // unreachable, p odd
}

}  // namespace kil
