#pragma once

#include <set>

#include "kil/constructions.hpp"

namespace kil {

enum class FormKind { SymmetricDot, SkewWedge };

// nondegenerate 2x2 bilinear form: the identity for the dot product, the
// canonical symplectic matrix for the wedge s1*s2' - s2*s1'
struct BilinearForm {
  FormKind kind;
  std::array<std::array<u64, 2>, 2> matrix;
};

BilinearForm dot_form(const Fp& F);
BilinearForm wedge_form(const Fp& F);
u64 eval_form(const BilinearForm& form, const AffinePoint2& s, const AffinePoint2& t, const Fp& F);

std::set<u64> bilinear_value_set(const std::vector<AffinePoint2>& S, const BilinearForm& form,
                                 const Fp& F);

// quadruples (s,s',t,t') with form(s,s') = form(t,t'); value-bucketed pass
u64 energy_bilinear(const std::vector<AffinePoint2>& S, const BilinearForm& form, const Fp& F,
                    bool exclude_zero);
// O(N^4) witness for small instances
u64 energy_bilinear_bruteforce(const std::vector<AffinePoint2>& S, const BilinearForm& form,
                               const Fp& F, bool exclude_zero, u64 budget = kDefaultEnumBudget);
// quadruples with form(s,s') = form(t,t') = 0
u64 energy_bilinear_zero_quadruples(const std::vector<AffinePoint2>& S, const BilinearForm& form,
                                    const Fp& F);

enum class SumProdSign { Plus, Minus };

std::set<u64> product_sum_set(const std::vector<u64>& A, const std::vector<u64>& B,
                              SumProdSign sign, const Fp& F);

struct DistanceSet {
  std::set<u64> values;            // all ||s-t||^2 over ordered pairs, self included
  std::vector<u64> pinned_counts;  // per source point, distinct values to *other* points
  u64 max_pinned = 0;
};

u64 dist2(const AffinePoint3& s, const AffinePoint3& t, const Fp& F);

DistanceSet distance_census(const std::vector<AffinePoint3>& S, const Fp& F);

struct NullCensus {
  u64 null_pairs = 0;                 // unordered pairs at squared distance 0
  u64 nontrivial_null_triangles = 0;  // all-null triples not on one isotropic line
};

NullCensus null_census(const std::vector<AffinePoint3>& S, const Fp& F,
                       u64 budget = kDefaultEnumBudget);

enum class EnergyVariant { E, EStar };

// triples (s,t,t') with ||s-t||^2 = ||s-t'||^2 != 0; EStar additionally
// requires (t,t') not null. Level-set bucketed path.
u64 energy_distance(const std::vector<AffinePoint3>& S, EnergyVariant variant, const Fp& F,
                    u64 budget = kDefaultEnumBudget);
u64 energy_distance_bruteforce(const std::vector<AffinePoint3>& S, EnergyVariant variant,
                               const Fp& F, u64 budget = kDefaultEnumBudget);

// true when S lies in one affine plane whose normal direction is isotropic
bool in_semi_isotropic_plane(const std::vector<AffinePoint3>& S, const Fp& F);

// weighted P^3 arrangement whose weighted incidences count the quadruples of
// a planar instance: point classes of (s,t), plane classes of (s',t')
Arrangement quadruple_arrangement(const std::vector<AffinePoint2>& S, const Fp& F);

}  // namespace kil
