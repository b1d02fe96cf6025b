#pragma once

#include <compare>
#include <optional>

#include "kil/linalg.hpp"

namespace kil {

inline constexpr u64 kDefaultEnumBudget = 8'000'000;

// point of P^d(F_p), canonical: first nonzero coordinate is 1
struct ProjPoint {
  Fvec c;
  auto operator<=>(const ProjPoint&) const = default;
};

// hyperplane of P^d(F_p), covector with the same normalization
struct Hyperplane {
  Fvec c;
  auto operator<=>(const Hyperplane&) const = default;
};

ProjPoint make_point(Fvec raw, const Fp& F);
Hyperplane make_hyperplane(Fvec raw, const Fp& F);

// line of P^3 as its unique reduced-echelon 2x4 basis
struct LineP3 {
  Fmat b;
  auto operator<=>(const LineP3&) const = default;
};

bool incident(const ProjPoint& q, const Hyperplane& pi, const Fp& F);

LineP3 line_from_points(const ProjPoint& q, const ProjPoint& u, const Fp& F);

// canonicalize an arbitrary spanning 2x4 matrix; must have rank 2
LineP3 line_from_matrix(Fmat rows, const Fp& F);

// all p+1 rational points of a line, in deterministic parameter order
std::vector<ProjPoint> line_points(const LineP3& l, const Fp& F);

enum class LineRelation { Equal, Meet, Skew };

struct LineRelationResult {
  LineRelation rel;
  std::optional<ProjPoint> meet;  // present iff rel == Meet
};

LineRelationResult line_line_relation(const LineP3& a, const LineP3& b, const Fp& F);

u64 count_points(int d, const Fp& F);        // (p^{d+1}-1)/(p-1)
u64 count_lines_p3(const Fp& F);             // (p^2+1)(p^2+p+1)

// exhaustive enumerators; deterministic lexicographic order on canonical forms
std::vector<ProjPoint> enumerate_points(int d, const Fp& F, u64 budget = kDefaultEnumBudget);
std::vector<Hyperplane> enumerate_hyperplanes(int d, const Fp& F, u64 budget = kDefaultEnumBudget);
std::vector<LineP3> enumerate_lines_p3(const Fp& F, u64 budget = kDefaultEnumBudget);

struct Collinearity {
  u64 k = 0;
  LineP3 witness;
};

// largest number of input points on one line / planes through one line
Collinearity max_collinear(const std::vector<ProjPoint>& points, const Fp& F);
Collinearity max_collinear(const std::vector<Hyperplane>& planes, const Fp& F);

// the line common to two distinct planes of P^3
LineP3 plane_intersection_line(const Hyperplane& a, const Hyperplane& b, const Fp& F);

}  // namespace kil
