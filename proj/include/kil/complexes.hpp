#pragma once

#include <array>

#include "kil/klein.hpp"

namespace kil {

// Covector (u : w) of a hyperplane S = {L : u·dir(L) + w·mom(L) = 0} in P^5.
// The complex of lines it cuts from K is regular iff u·w != 0; otherwise S is
// tangent to K and the complex is the set of lines meeting one fixed line.
struct ComplexCovector {
  Fvec c;  // 6 coordinates, normalized
  auto operator<=>(const ComplexCovector&) const = default;
};

ComplexCovector make_covector(Fvec raw, const Fp& F);

u64 pair_with(const ComplexCovector& U, const Pluecker& L, const Fp& F);

enum class ComplexClass { Regular, Singular };

struct ComplexClassification {
  ComplexClass cls;
  std::optional<Pluecker> tangency;  // the L with T_L K = S, singular case only
};

ComplexClassification classify_complex(const ComplexCovector& U, const Fp& F);

// K ∩ S for a regular S: a three-dimensional quadric holding no 2-plane
struct ThreeQuadricG {
  ComplexCovector s;
};

ThreeQuadricG make_three_quadric(ComplexCovector U, const Fp& F);  // SingularComplex

bool in_g(const ThreeQuadricG& g, const Pluecker& L, const Fp& F);

struct GLine {
  enum class Tag { Alpha, Beta };
  Fmat carrier;  // 2x6 rref, a projective line inside G
  Tag tag;
  Fvec source;   // the point or plane the line came from
  auto operator<=>(const GLine&) const = default;
};

GLine restrict_to_g(const ThreeQuadricG& g, const ProjPoint& q, const Fp& F);
GLine restrict_to_g(const ThreeQuadricG& g, const Hyperplane& pi, const Fp& F);

enum class CarrierRelation { Equal, Meet, Skew };
CarrierRelation carrier_relation(const Fmat& a, const Fmat& b, const Fp& F);

// 4x4 skew nondegenerate matrix; sends q to the plane with covector A q
struct NullPolarity {
  Fmat a;
};

NullPolarity null_polarity_from(const ComplexCovector& U, const Fp& F);  // SingularComplex
Hyperplane polar_plane(const NullPolarity& np, const ProjPoint& q, const Fp& F);
// invariant: every point of l lies on its polar plane and l is inside it
bool line_invariant(const NullPolarity& np, const LineP3& l, const Fp& F);

struct ReduceResult {
  ThreeQuadricG g;
  std::vector<GLine> alpha;  // one per input point, same order
  std::vector<GLine> beta;   // one per input plane, same order
  u64 draws = 0;             // covector samples consumed
  u64 cross_incidences = 0;  // verified, equals |I(P,Pi)|
};

// Incidence-preserving reduction: find a regular S avoiding every same-family
// intersection point and containing no pencil line of an incident pair, so
// that cross-family line incidences in G reproduce |I(P,Pi)| exactly.
// budget_draws == 0 selects the default 10*(m^2 + n^2 + mn).
ReduceResult reduce_incidence(const std::vector<ProjPoint>& points,
                              const std::vector<Hyperplane>& planes, const Fp& F, u64 seed,
                              u64 budget_draws = 0);

struct ConvertResult {
  std::vector<ProjPoint> points;     // q_i = meet of two preimage lines
  std::vector<Hyperplane> planes;    // pi_i = their span; q_i lies in pi_i
  u64 incidences = 0;                // |I(P,Pi)|
  u64 meeting_ordered_pairs = 0;     // equals |I(P,Pi)| - n
  u64 meeting_unordered_pairs = 0;
};

// Pencil decomposition of lines inside G to a point-plane arrangement.
ConvertResult convert_lines(const ThreeQuadricG& g, const std::vector<Fmat>& carriers,
                            const Fp& F);

// Coordinates on S ≅ P^4: a 5x6 basis of S plus projection of carriers.
struct HyperplaneChart {
  Fmat basis;  // 5x6, rows span S
};

HyperplaneChart chart_of(const ThreeQuadricG& g, const Fp& F);
Fmat to_p4(const HyperplaneChart& chart, const Fmat& carrier, const Fp& F);  // 2x5

// Generic projection of lines in P^4 to P^3 preserving the full meet/skew
// relation matrix; seeded rejection sampling over the center point.
std::vector<LineP3> project_to_p3(const std::vector<Fmat>& lines_p4, const Fp& F, u64 seed,
                                  u64 budget_draws = 0);

// --- the SL2 chart of a fixed regular complex ---

// Affine chart {(x1,x2,y1,y2) : x1*y1 - x2*y2 = 1} of G for the covector
// (0,0,1,0,0,-1); identified with SL2(F_p) via [[a,b],[c,d]] -> (a,b,d,c).
struct ChartPoint {
  std::array<u64, 4> x;  // (x1, x2, y1, y2)
  auto operator<=>(const ChartPoint&) const = default;
};

struct ChartLine {
  std::array<u64, 4> base;  // base[lead(dir)] == 0
  std::array<u64, 4> dir;   // first nonzero coordinate is 1
  auto operator<=>(const ChartLine&) const = default;
};

ThreeQuadricG sl2_three_quadric(const Fp& F);
ChartPoint sl2_embed_matrix(u64 a, u64 b, u64 c, u64 d, const Fp& F);  // requires det 1
Pluecker chart_to_pluecker(const ChartPoint& x, const Fp& F);
Fmat chart_line_carrier(const ChartLine& l, const Fp& F);  // projective closure, 2x6

std::vector<ChartPoint> sl2_points(const Fp& F, u64 budget = kDefaultEnumBudget);
// every affine line of F_p^4 fully contained in the chart, sorted
std::vector<ChartLine> sl2_lines(const Fp& F, u64 budget = kDefaultEnumBudget);

struct CoverResult {
  u64 union_size = 0;
  Ratio fraction;  // union_size / p^3
};

CoverResult line_union_cover(const std::vector<ChartLine>& lines, const Fp& F);

}  // namespace kil
