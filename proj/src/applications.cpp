#include "kil/applications.hpp"

#include <algorithm>
#include <map>

namespace kil {

BilinearForm dot_form(const Fp&) {
  return BilinearForm{FormKind::SymmetricDot, {{{1, 0}, {0, 1}}}};
}

BilinearForm wedge_form(const Fp& F) {
  return BilinearForm{FormKind::SkewWedge, {{{0, 1}, {F.neg(1), 0}}}};
}

u64 eval_form(const BilinearForm& form, const AffinePoint2& s, const AffinePoint2& t,
              const Fp& F) {
  u64 acc = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      acc = F.add(acc, F.mul(s[i], F.mul(form.matrix[i][j], t[j])));
  return acc;
}

std::set<u64> bilinear_value_set(const std::vector<AffinePoint2>& S, const BilinearForm& form,
                                 const Fp& F) {
  if (S.empty()) fail(Err::TooFewObjects, "value set of an empty set");
  std::set<u64> vals;
  for (const auto& s : S)
    for (const auto& t : S) vals.insert(eval_form(form, s, t, F));
  return vals;
}

namespace {

std::map<u64, u64> value_multiplicities(const std::vector<AffinePoint2>& S,
                                        const BilinearForm& form, const Fp& F) {
  std::map<u64, u64> mult;
  for (const auto& s : S)
    for (const auto& t : S) ++mult[eval_form(form, s, t, F)];
  return mult;
}

}  // namespace

u64 energy_bilinear(const std::vector<AffinePoint2>& S, const BilinearForm& form, const Fp& F,
                    bool exclude_zero) {
  u64 e = 0;
  for (const auto& [value, count] : value_multiplicities(S, form, F)) {
    if (exclude_zero && value == 0) continue;
    e += count * count;
  }
  return e;
}

u64 energy_bilinear_bruteforce(const std::vector<AffinePoint2>& S, const BilinearForm& form,
                               const Fp& F, bool exclude_zero, u64 budget) {
  u64 n = S.size();
  if (n * n * n * n > budget) fail(Err::BudgetExceeded, "quadruple scan over budget");
  u64 e = 0;
  for (const auto& s : S)
    for (const auto& sp : S) {
      u64 v = eval_form(form, s, sp, F);
      if (exclude_zero && v == 0) continue;
      for (const auto& t : S)
        for (const auto& tp : S)
          if (eval_form(form, t, tp, F) == v) ++e;
    }
  return e;
}

u64 energy_bilinear_zero_quadruples(const std::vector<AffinePoint2>& S, const BilinearForm& form,
                                    const Fp& F) {
  auto mult = value_multiplicities(S, form, F);
  auto it = mult.find(0);
  return it == mult.end() ? 0 : it->second * it->second;
}

std::set<u64> product_sum_set(const std::vector<u64>& A, const std::vector<u64>& B,
                              SumProdSign sign, const Fp& F) {
  if (A.empty() || B.empty()) fail(Err::TooFewObjects, "product set of an empty set");
  std::set<u64> prods;
  for (u64 a : A)
    for (u64 b : B) prods.insert(F.mul(a % F.p(), b % F.p()));
  std::set<u64> out;
  for (u64 x : prods)
    for (u64 y : prods) out.insert(sign == SumProdSign::Plus ? F.add(x, y) : F.sub(x, y));
  return out;
}

u64 dist2(const AffinePoint3& s, const AffinePoint3& t, const Fp& F) {
  u64 acc = 0;
  for (int i = 0; i < 3; ++i) {
    u64 d = F.sub(s[i], t[i]);
    acc = F.add(acc, F.mul(d, d));
  }
  return acc;
}

DistanceSet distance_census(const std::vector<AffinePoint3>& S, const Fp& F) {
  if (S.empty()) fail(Err::TooFewObjects, "distance set of an empty set");
  DistanceSet out;
  out.pinned_counts.reserve(S.size());
  for (const auto& s : S) {
    std::set<u64> local;
    for (const auto& t : S) {
      u64 d = dist2(s, t, F);
      out.values.insert(d);
      if (!(t == s)) local.insert(d);  // self-distance excluded from the pin
    }
    out.pinned_counts.push_back(local.size());
    out.max_pinned = std::max(out.max_pinned, static_cast<u64>(local.size()));
  }
  return out;
}

namespace {

bool collinear3(const AffinePoint3& a, const AffinePoint3& b, const AffinePoint3& c,
                const Fp& F) {
  AffinePoint3 u{F.sub(b[0], a[0]), F.sub(b[1], a[1]), F.sub(b[2], a[2])};
  AffinePoint3 v{F.sub(c[0], a[0]), F.sub(c[1], a[1]), F.sub(c[2], a[2])};
  // rank of the 2x3 difference matrix
  Fmat m{Fvec{u[0], u[1], u[2]}, Fvec{v[0], v[1], v[2]}};
  return rank(std::move(m), F) < 2;
}

}  // namespace

NullCensus null_census(const std::vector<AffinePoint3>& S, const Fp& F, u64 budget) {
  u64 n = S.size();
  if (n * n * n > budget) fail(Err::BudgetExceeded, "triple scan over budget");
  NullCensus out;
  std::vector<std::vector<size_t>> nulls(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (dist2(S[i], S[j], F) == 0) {
        ++out.null_pairs;
        nulls[i].push_back(j);
      }
  for (size_t i = 0; i < n; ++i)
    for (size_t a = 0; a < nulls[i].size(); ++a)
      for (size_t b = a + 1; b < nulls[i].size(); ++b) {
        size_t j = nulls[i][a], k = nulls[i][b];
        if (dist2(S[j], S[k], F) != 0) continue;
        if (!collinear3(S[i], S[j], S[k], F)) ++out.nontrivial_null_triangles;
      }
  return out;
}

u64 energy_distance(const std::vector<AffinePoint3>& S, EnergyVariant variant, const Fp& F,
                    u64 budget) {
  u64 n = S.size();
  if (n * n > budget) fail(Err::BudgetExceeded, "level-set pass over budget");
  u64 e = 0;
  for (const auto& s : S) {
    std::map<u64, std::vector<const AffinePoint3*>> levels;
    for (const auto& t : S) {
      u64 d = dist2(s, t, F);
      if (d != 0) levels[d].push_back(&t);
    }
    for (const auto& [value, members] : levels) {
      if (variant == EnergyVariant::E) {
        e += static_cast<u64>(members.size()) * members.size();
      } else {
        for (const auto* t : members)
          for (const auto* tp : members)
            if (dist2(*t, *tp, F) != 0) ++e;
      }
    }
  }
  return e;
}

u64 energy_distance_bruteforce(const std::vector<AffinePoint3>& S, EnergyVariant variant,
                               const Fp& F, u64 budget) {
  u64 n = S.size();
  if (n * n * n > budget) fail(Err::BudgetExceeded, "triple scan over budget");
  u64 e = 0;
  for (const auto& s : S)
    for (const auto& t : S)
      for (const auto& tp : S) {
        u64 d = dist2(s, t, F);
        if (d == 0 || d != dist2(s, tp, F)) continue;
        if (variant == EnergyVariant::EStar && dist2(t, tp, F) == 0) continue;
        ++e;
      }
  return e;
}

bool in_semi_isotropic_plane(const std::vector<AffinePoint3>& S, const Fp& F) {
  if (S.size() <= 1) return true;
  for (const ProjPoint& nrm : isotropic_directions(F)) {
    u64 c0 = 0;
    bool constant = true;
    for (size_t i = 0; i < S.size() && constant; ++i) {
      u64 v = 0;
      for (int j = 0; j < 3; ++j) v = F.add(v, F.mul(nrm.c[j], S[i][j]));
      if (i == 0)
        c0 = v;
      else if (v != c0)
        constant = false;
    }
    if (constant) return true;
  }
  return false;
}

Arrangement quadruple_arrangement(const std::vector<AffinePoint2>& S, const Fp& F) {
  for (const auto& s : S)
    if (s[0] % F.p() == 0 && s[1] % F.p() == 0)
      fail(Err::InvalidConfig, "the origin breaks the projective weighting");
  std::map<Fvec, u64> point_classes, plane_classes;
  for (const auto& s : S) {
    for (const auto& t : S) {
      // pairing: (s1:s2:t1:t2)·(s2':-s1':-t2':t1') = wedge(s,s') - wedge(t,t')
      Fvec pt{s[0] % F.p(), s[1] % F.p(), t[0] % F.p(), t[1] % F.p()};
      Fvec pl{s[1] % F.p(), F.neg(s[0] % F.p()), F.neg(t[1] % F.p()), t[0] % F.p()};
      ++point_classes[proj_normalize(std::move(pt), F)];
      ++plane_classes[proj_normalize(std::move(pl), F)];
    }
  }
  Arrangement arr;
  arr.p = F.p();
  for (const auto& [c, w] : point_classes) {
    arr.points.push_back(ProjPoint{c});
    arr.point_weights.push_back(w);
  }
  for (const auto& [c, w] : plane_classes) {
    arr.planes.push_back(Hyperplane{c});
    arr.plane_weights.push_back(w);
  }
  return arr;
}

}  // namespace kil
