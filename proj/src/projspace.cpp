#include "kil/projspace.hpp"

#include <algorithm>
#include <map>

namespace kil {

ProjPoint make_point(Fvec raw, const Fp& F) { return ProjPoint{proj_normalize(std::move(raw), F)}; }

Hyperplane make_hyperplane(Fvec raw, const Fp& F) {
  return Hyperplane{proj_normalize(std::move(raw), F)};
}

bool incident(const ProjPoint& q, const Hyperplane& pi, const Fp& F) {
  if (q.c.size() != pi.c.size()) fail(Err::DimensionMismatch, "point/hyperplane dimensions differ");
  return dot(q.c, pi.c, F) == 0;
}

LineP3 line_from_points(const ProjPoint& q, const ProjPoint& u, const Fp& F) {
  if (q == u) fail(Err::IdenticalPoints, "a line needs two distinct points");
  return line_from_matrix({q.c, u.c}, F);
}

LineP3 line_from_matrix(Fmat rows, const Fp& F) {
  Fmat r = rref(std::move(rows), F);
  if (r.size() != 2) fail(Err::IdenticalPoints, "spanning set does not have rank 2");
  return LineP3{std::move(r)};
}

std::vector<ProjPoint> line_points(const LineP3& l, const Fp& F) {
  std::vector<ProjPoint> pts;
  pts.reserve(F.p() + 1);
  pts.push_back(ProjPoint{proj_normalize(l.b[1], F)});  // parameter (0:1)
  for (u64 t = 0; t < F.p(); ++t) {                     // parameters (1:t)
    Fvec v(l.b[0].size());
    for (size_t j = 0; j < v.size(); ++j) v[j] = F.add(l.b[0][j], F.mul(t, l.b[1][j]));
    pts.push_back(ProjPoint{proj_normalize(std::move(v), F)});
  }
  return pts;
}

LineRelationResult line_line_relation(const LineP3& a, const LineP3& b, const Fp& F) {
  if (a == b) return {LineRelation::Equal, std::nullopt};
  Fmat common = rowspace_intersection(a.b, b.b, F);
  if (common.empty()) return {LineRelation::Skew, std::nullopt};
  // distinct coplanar lines share exactly one point
  return {LineRelation::Meet, ProjPoint{proj_normalize(common[0], F)}};
}

u64 count_points(int d, const Fp& F) {
  u64 total = 0, power = 1;
  for (int i = 0; i <= d; ++i) {
    total += power;
    power *= F.p();
  }
  return total;
}

u64 count_lines_p3(const Fp& F) {
  u64 p = F.p();
  return (p * p + 1) * (p * p + p + 1);
}

std::vector<ProjPoint> enumerate_points(int d, const Fp& F, u64 budget) {
  if (d < 1 || d > 5) fail(Err::InvalidConfig, "dimension out of range");
  u64 total = count_points(d, F);
  if (total > budget) fail(Err::BudgetExceeded, "too many points to enumerate");
  // canonical tuples in lexicographic order: leading 1 in position i, zeros
  // before it; (0,..,0,1) comes first
  std::vector<ProjPoint> out;
  out.reserve(total);
  int n = d + 1;
  for (int lead = d; lead >= 0; --lead) {
    int free_coords = d - lead;
    u64 combos = 1;
    for (int i = 0; i < free_coords; ++i) combos *= F.p();
    for (u64 idx = 0; idx < combos; ++idx) {
      Fvec v(n, 0);
      v[lead] = 1;
      u64 rest = idx;
      for (int j = n - 1; j > lead; --j) {
        v[j] = rest % F.p();
        rest /= F.p();
      }
      out.push_back(ProjPoint{std::move(v)});
    }
  }
  return out;
}

std::vector<Hyperplane> enumerate_hyperplanes(int d, const Fp& F, u64 budget) {
  std::vector<ProjPoint> pts = enumerate_points(d, F, budget);
  std::vector<Hyperplane> out;
  out.reserve(pts.size());
  for (auto& q : pts) out.push_back(Hyperplane{std::move(q.c)});
  return out;
}

std::vector<LineP3> enumerate_lines_p3(const Fp& F, u64 budget) {
  u64 total = count_lines_p3(F);
  if (total > budget) fail(Err::BudgetExceeded, "too many lines to enumerate");
  u64 p = F.p();
  std::vector<LineP3> out;
  out.reserve(total);
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      // rref shape: row0 pivot i, row1 pivot j, free entries elsewhere
      std::vector<int> free0, free1;
      for (int c = i + 1; c < 4; ++c)
        if (c != j) free0.push_back(c);
      for (int c = j + 1; c < 4; ++c) free1.push_back(c);
      u64 combos = 1;
      for (size_t t = 0; t < free0.size() + free1.size(); ++t) combos *= p;
      for (u64 idx = 0; idx < combos; ++idx) {
        Fmat m(2, Fvec(4, 0));
        m[0][i] = 1;
        m[1][j] = 1;
        u64 rest = idx;
        for (auto it = free1.rbegin(); it != free1.rend(); ++it) {
          m[1][*it] = rest % p;
          rest /= p;
        }
        for (auto it = free0.rbegin(); it != free0.rend(); ++it) {
          m[0][*it] = rest % p;
          rest /= p;
        }
        out.push_back(LineP3{std::move(m)});
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// A line carrying t of the inputs receives exactly C(t,2) of the pairs, so
// invert c = t(t-1)/2 to recover t.
u64 members_from_pairs(u64 c) {
  u64 disc = 1 + 8 * c;
  u64 r = ceil_sqrt(disc);
  while (r * r > disc) --r;
  u64 t = (1 + r) / 2;
  if (t * (t - 1) / 2 != c) fail(Err::InvalidConfig, "pair profile is not C(t,2)");
  return t;
}

Collinearity best_line_of(const std::map<LineP3, u64>& pair_hits) {
  Collinearity best;
  for (const auto& [line, pairs] : pair_hits) {
    u64 t = members_from_pairs(pairs);
    if (t > best.k) {
      best.k = t;
      best.witness = line;
    }
  }
  return best;
}

}  // namespace

Collinearity max_collinear(const std::vector<ProjPoint>& points, const Fp& F) {
  if (points.size() < 2) fail(Err::TooFewObjects, "need at least two points");
  std::map<LineP3, u64> pair_hits;
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j)
      ++pair_hits[line_from_points(points[i], points[j], F)];
  return best_line_of(pair_hits);
}

Collinearity max_collinear(const std::vector<Hyperplane>& planes, const Fp& F) {
  if (planes.size() < 2) fail(Err::TooFewObjects, "need at least two planes");
  std::map<LineP3, u64> pair_hits;
  for (size_t i = 0; i < planes.size(); ++i)
    for (size_t j = i + 1; j < planes.size(); ++j)
      ++pair_hits[plane_intersection_line(planes[i], planes[j], F)];
  return best_line_of(pair_hits);
}

LineP3 plane_intersection_line(const Hyperplane& a, const Hyperplane& b, const Fp& F) {
  if (a == b) fail(Err::IdenticalPoints, "planes coincide");
  Fmat sol = nullspace(Fmat{a.c, b.c}, F);
  return line_from_matrix(std::move(sol), F);
}

}  // namespace kil
