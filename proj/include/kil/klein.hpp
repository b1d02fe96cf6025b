#pragma once

#include <array>

#include "kil/projspace.hpp"

namespace kil {

// Plücker vector (P01:P02:P03:P23:P31:P12), normalized as a point of P^5.
// In the split view L = (w : v), w = (P01,P02,P03) is the direction part and
// v = (P23,P31,P12) the moment part; L lies on the quadric K iff w·v = 0.
struct Pluecker {
  Fvec c;
  auto operator<=>(const Pluecker&) const = default;
};

Pluecker make_pluecker(Fvec raw, const Fp& F);

// the quadratic form P01*P23 + P02*P31 + P03*P12
u64 klein_form(const Pluecker& L, const Fp& F);
bool on_klein(const Pluecker& L, const Fp& F);

Pluecker klein_map(const LineP3& l, const Fp& F);
LineP3 klein_preimage(const Pluecker& L, const Fp& F);  // NotOnKleinQuadric

// The symmetric bilinear form polarizing the Klein quadric. Only its
// vanishing is representative-independent; use lines_meet for the predicate.
u64 reciprocal_product(const Pluecker& L, const Pluecker& M, const Fp& F);
bool lines_meet(const Pluecker& L, const Pluecker& M, const Fp& F);

// the 2-plane of K holding the Klein images of all lines through q
struct AlphaPlane {
  ProjPoint q;
  Fmat span;  // 3x6 rref
};

// the 2-plane of K holding the Klein images of all lines inside pi
struct BetaPlane {
  Hyperplane pi;
  Fmat span;  // 3x6 rref
};

AlphaPlane alpha_plane(const ProjPoint& q, const Fp& F);
BetaPlane beta_plane(const Hyperplane& pi, const Fp& F);

// rational points of a projective 2-plane span (3x6 rref): p^2+p+1 of them
std::vector<Pluecker> span_points(const Fmat& span, const Fp& F);
// rational points of a projective line (2x6 rref): p+1 of them
std::vector<Pluecker> carrier_points(const Fmat& carrier, const Fp& F);

// Klein image of the plane pencil of lines through q inside pi: a projective
// line in K if q lies in pi, empty otherwise (2x6 rref carrier).
std::optional<Fmat> pencil(const ProjPoint& q, const Hyperplane& pi, const Fp& F);

struct Regulus {
  std::array<LineP3, 3> defining;
  Fmat span;                     // the 2-plane S2 cut by the three tangency conditions
  std::vector<Pluecker> members; // the conic S2 ∩ K, p+1 points when smooth
};

// all lines meeting three mutually skew lines;
// NotMutuallySkew / DegenerateConic on bad inputs
Regulus regulus_through(const LineP3& l1, const LineP3& l2, const LineP3& l3, const Fp& F);

// the other ruling of the same quadric surface
Regulus reciprocal_regulus(const Regulus& r, const Fp& F);

}  // namespace kil
