#pragma once

#include "kil/projspace.hpp"

namespace kil {

struct Arrangement {
  u64 p = 0;
  std::vector<ProjPoint> points;
  std::vector<Hyperplane> planes;
  std::vector<u64> point_weights;  // empty means all 1
  std::vector<u64> plane_weights;

  bool weighted() const { return !point_weights.empty() || !plane_weights.empty(); }
};

// duplicate-free and weight >= 1 checks; throws InvalidConfig
void validate(const Arrangement& arr, const Fp& F);

struct ForbiddenLines {
  std::vector<LineP3> lines;
};

struct IncidenceReport {
  u64 incidences = 0;  // I, or I* for the restricted count
  u64 m = 0, n = 0;
  u64 k_points = 1, k_planes = 1;
  std::optional<u64> k_star;  // restricted counts only
};

// exact |{(q,pi) : q in pi}|; plane-indexed bucket pass, optionally sharded
IncidenceReport count_incidences(const Arrangement& arr, const Fp& F, int threads = 1);

// independent recount, plane-major with the projective predicate
u64 count_incidences_bruteforce(const Arrangement& arr, const Fp& F);

// Incidences excluding pairs supported on a forbidden line. k_star is the
// plane-side statistic: the largest number of input planes through a common
// line outside the forbidden set.
IncidenceReport count_restricted(const Arrangement& arr, const ForbiddenLines& forb, const Fp& F);

// exact sum of w(q) w(pi) over incident pairs
u64 count_weighted(const Arrangement& arr, const Fp& F, int threads = 1);
u64 count_weighted_bruteforce(const Arrangement& arr, const Fp& F);

struct BoundVerdict {
  bool swapped = false;     // duality applied to reach m >= n
  bool n_le_p2 = false;     // whether n <= p^2 held for this instance
  u64 m = 0, n = 0, k = 0;  // oriented sizes and the collinearity in play
  u64 bound_value = 0;      // m*ceil(sqrt(n)) + k*m
  Ratio ratio;              // I / bound_value
};

// Evaluates the bound expression; k is the collinearity of the smaller
// family (k* when the report carries one). OrientationError if m < n and
// swapping was forbidden.
BoundVerdict bound_check(const IncidenceReport& rep, const Fp& F, bool allow_swap = true);

// homogeneous polynomial of degree d in four variables, coefficients in
// lexicographic exponent order
struct Poly4 {
  u64 degree = 0;
  std::vector<u64> coeffs;
};

u64 eval_poly4(const Poly4& poly, const Fvec& x, const Fp& F);
u64 monomial_count(u64 degree);  // C(d+3, 3)

// Nonzero degree-d form vanishing on every line, found as a kernel vector of
// the evaluation matrix at d+1 distinct points per line; NoKernel when the
// kernel is trivial. Vanishing on all rational points is re-verified.
Poly4 fit_vanishing_polynomial(const std::vector<LineP3>& lines, u64 d, const Fp& F);

}  // namespace kil
