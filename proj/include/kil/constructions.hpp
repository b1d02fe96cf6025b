#pragma once

#include <array>

#include "kil/incidence.hpp"

namespace kil {

using AffinePoint2 = std::array<u64, 2>;
using AffinePoint3 = std::array<u64, 3>;

// {(a,b) : a,b in [1,n], gcd(a,b)=1} embedded in F_p^2; requires p > 4n^2 so
// integer dot products never wrap
std::vector<AffinePoint2> coprime_grid(u64 n, const Fp& F);

struct CubicSurface {
  std::vector<AffinePoint3> points;        // affine solutions, lines removed
  std::vector<AffinePoint3> all_points;    // before removal
  u64 lines_found = 0;
  std::vector<std::pair<AffinePoint3, AffinePoint3>> removed_lines;  // (base, direction)
};

// affine solutions of a*x^3 + b*y^3 + c*z^3 = e with every fully contained
// line detected by exhaustive scan and removed; DegenerateCubic when the
// line count exceeds the 27 a smooth cubic can carry
CubicSurface cubic_surface_points(const Fp& F, const std::array<u64, 4>& coeffs,
                                  u64 budget = kDefaultEnumBudget);

struct SemiIsotropicGrid {
  std::vector<AffinePoint3> points;  // k*l points, a*e2 + b*e1
  AffinePoint3 e1;                   // isotropic direction
  AffinePoint3 e2;                   // orthogonal non-isotropic companion
  u64 k = 0, l = 0;
};

SemiIsotropicGrid semi_isotropic_grid(u64 k, u64 l, const Fp& F, u64 budget = kDefaultEnumBudget);

// all projective solutions of x^2+y^2+z^2 = 0; exactly p+1 of them
std::vector<ProjPoint> isotropic_directions(const Fp& F);

// all lines with moment = lambda * direction; their affine points sit on the
// level set ||q||^2 = -lambda^2 and every direction is isotropic
std::vector<LineP3> isotropic_regulus(u64 lambda, const Fp& F);

enum class ArrangementMode { Generic, Clustered };

// seeded duplicate-free arrangement; clustered mode plants k_target planes
// through one common line before filling generically
Arrangement random_arrangement(u64 m, u64 n, const Fp& F, u64 seed,
                               ArrangementMode mode = ArrangementMode::Generic,
                               u64 k_target = 0);

// decode the i-th canonical point of P^3 in enumeration order
ProjPoint point_by_index(u64 idx, const Fp& F);

}  // namespace kil
