#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kil {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

enum class Err {
  NotPrime,
  EvenCharacteristic,
  DivisionByZero,
  DimensionMismatch,
  IdenticalPoints,
  BudgetExceeded,
  TooFewObjects,
  NotOnKleinQuadric,
  NotMutuallySkew,
  DegenerateConic,
  SearchExhausted,
  NotInG,
  FewerThanTwoRationalPoints,
  SingularComplex,
  NoKernel,
  ModulusTooSmall,
  InsufficientSpace,
  OrientationError,
  MissingArtifact,
  DegenerateCubic,
  InvalidConfig,
};

const char* err_name(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& msg);
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] void fail(Err code, const std::string& msg);

// splitmix64. Own generator so that seeded runs are identical across
// platforms and standard library versions.
struct Rng {
  u64 state;

  explicit Rng(u64 seed) : state(seed) {}

  u64 next() {
    u64 z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n > 0; rejection keeps the distribution exact
  u64 below(u64 n) {
    u64 limit = ~u64{0} - (~u64{0} % n);
    u64 x;
    do {
      x = next();
    } while (x >= limit);
    return x % n;
  }
};

// exact nonnegative rational, kept unreduced so reports echo the raw counts
struct Ratio {
  u64 num = 0;
  u64 den = 1;

  double value() const { return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

u64 ceil_sqrt(u64 n);

}  // namespace kil
