#include "kil/common.hpp"

#include <cmath>

namespace kil {

const char* err_name(Err e) {
  switch (e) {
    case Err::NotPrime: return "NotPrime";
    case Err::EvenCharacteristic: return "EvenCharacteristic";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::IdenticalPoints: return "IdenticalPoints";
    case Err::BudgetExceeded: return "BudgetExceeded";
    case Err::TooFewObjects: return "TooFewObjects";
    case Err::NotOnKleinQuadric: return "NotOnKleinQuadric";
    case Err::NotMutuallySkew: return "NotMutuallySkew";
    case Err::DegenerateConic: return "DegenerateConic";
    case Err::SearchExhausted: return "SearchExhausted";
    case Err::NotInG: return "NotInG";
    case Err::FewerThanTwoRationalPoints: return "FewerThanTwoRationalPoints";
    case Err::SingularComplex: return "SingularComplex";
    case Err::NoKernel: return "NoKernel";
    case Err::ModulusTooSmall: return "ModulusTooSmall";
    case Err::InsufficientSpace: return "InsufficientSpace";
    case Err::OrientationError: return "OrientationError";
    case Err::MissingArtifact: return "MissingArtifact";
    case Err::DegenerateCubic: return "DegenerateCubic";
    case Err::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(Err code, const std::string& msg)
    : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}

void fail(Err code, const std::string& msg) { throw Error(code, msg); }

u64 ceil_sqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;  // r = floor(sqrt(n)), exactly
  return r * r == n ? r : r + 1;
}

}  // namespace kil
