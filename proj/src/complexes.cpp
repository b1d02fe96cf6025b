#include "kil/complexes.hpp"

#include <algorithm>
#include <set>

namespace kil {

ComplexCovector make_covector(Fvec raw, const Fp& F) {
  if (raw.size() != 6) fail(Err::DimensionMismatch, "complex covectors have six coordinates");
  return ComplexCovector{proj_normalize(std::move(raw), F)};
}

u64 pair_with(const ComplexCovector& U, const Pluecker& L, const Fp& F) {
  return dot(U.c, L.c, F);
}

ComplexClassification classify_complex(const ComplexCovector& U, const Fp& F) {
  u64 uw = 0;
  for (int k = 0; k < 3; ++k) uw = F.add(uw, F.mul(U.c[k], U.c[k + 3]));
  if (uw != 0) return {ComplexClass::Regular, std::nullopt};
  // S is tangent to K at (w : u)
  Fvec t(6);
  for (int k = 0; k < 3; ++k) {
    t[k] = U.c[k + 3];
    t[k + 3] = U.c[k];
  }
  return {ComplexClass::Singular, make_pluecker(std::move(t), F)};
}

ThreeQuadricG make_three_quadric(ComplexCovector U, const Fp& F) {
  if (classify_complex(U, F).cls != ComplexClass::Regular)
    fail(Err::SingularComplex, "hyperplane is tangent to the Klein quadric");
  return ThreeQuadricG{std::move(U)};
}

bool in_g(const ThreeQuadricG& g, const Pluecker& L, const Fp& F) {
  return on_klein(L, F) && pair_with(g.s, L, F) == 0;
}

namespace {

// intersect a 2-plane span (3x6) with the hyperplane U: always a line for
// spans inside K when U is regular
Fmat cut_span_by(const Fmat& span, const ComplexCovector& U, const Fp& F) {
  Fvec t(3);
  for (int i = 0; i < 3; ++i) t[i] = dot(span[i], U.c, F);
  Fmat coeffs = nullspace(Fmat{t}, F);
  if (coeffs.size() != 2) fail(Err::InvalidConfig, "plane is contained in the hyperplane");
  Fmat rows;
  for (const Fvec& c : coeffs) {
    Fvec v(6, 0);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 6; ++j) v[j] = F.add(v[j], F.mul(c[i], span[i][j]));
    rows.push_back(std::move(v));
  }
  return rref(std::move(rows), F);
}

}  // namespace

GLine restrict_to_g(const ThreeQuadricG& g, const ProjPoint& q, const Fp& F) {
  return GLine{cut_span_by(alpha_plane(q, F).span, g.s, F), GLine::Tag::Alpha, q.c};
}

GLine restrict_to_g(const ThreeQuadricG& g, const Hyperplane& pi, const Fp& F) {
  return GLine{cut_span_by(beta_plane(pi, F).span, g.s, F), GLine::Tag::Beta, pi.c};
}

CarrierRelation carrier_relation(const Fmat& a, const Fmat& b, const Fp& F) {
  if (a == b) return CarrierRelation::Equal;
  int r = rank(stack_rows(a, b), F);
  if (r == 3) return CarrierRelation::Meet;
  if (r == 4) return CarrierRelation::Skew;
  return CarrierRelation::Equal;
}

NullPolarity null_polarity_from(const ComplexCovector& U, const Fp& F) {
  if (classify_complex(U, F).cls != ComplexClass::Regular)
    fail(Err::SingularComplex, "null polarities correspond to regular complexes only");
  // above-diagonal assignment: (a01,a02,a03,a23,a31,a12) = (u1,u2,u3,w1,w2,w3);
  // then a line is invariant iff its Plücker vector pairs to zero with U,
  // and Pf(A) = u·w so regularity is exactly nondegeneracy
  const Fvec& c = U.c;
  Fmat A(4, Fvec(4, 0));
  constexpr int kIdx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};
  for (int k = 0; k < 6; ++k) {
    int i = kIdx[k][0], j = kIdx[k][1];
    A[i][j] = c[k];
    A[j][i] = F.neg(c[k]);
  }
  return NullPolarity{std::move(A)};
}

Hyperplane polar_plane(const NullPolarity& np, const ProjPoint& q, const Fp& F) {
  Fvec v(4, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) v[i] = F.add(v[i], F.mul(np.a[i][j], q.c[j]));
  return make_hyperplane(std::move(v), F);
}

bool line_invariant(const NullPolarity& np, const LineP3& l, const Fp& F) {
  for (const ProjPoint& q : line_points(l, F)) {
    Hyperplane h = polar_plane(np, q, F);
    for (const Fvec& row : l.b)
      if (dot(row, h.c, F) != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// point-plane to line-line reduction

namespace {

struct PencilConstraint {
  std::array<u64, 6> a;
  std::array<u64, 6> b;
};

std::array<u64, 6> to_arr6(const Fvec& v) {
  std::array<u64, 6> a{};
  for (int i = 0; i < 6; ++i) a[i] = v[i];
  return a;
}

u64 dot6(const std::array<u64, 6>& a, const std::array<u64, 6>& b, const Fp& F) {
  u64 s = 0;
  for (int i = 0; i < 6; ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

}  // namespace

ReduceResult reduce_incidence(const std::vector<ProjPoint>& points,
                              const std::vector<Hyperplane>& planes, const Fp& F, u64 seed,
                              u64 budget_draws) {
  u64 m = points.size(), n = planes.size();
  if (budget_draws == 0) budget_draws = 10 * (m * m + n * n + m * n);
  if (budget_draws == 0) budget_draws = 16;

  // same-family intersection points of the alpha/beta planes in K
  std::set<Fvec> forbidden_set;
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j)
      forbidden_set.insert(klein_map(line_from_points(points[i], points[j], F), F).c);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      forbidden_set.insert(klein_map(plane_intersection_line(planes[i], planes[j], F), F).c);
  std::vector<std::array<u64, 6>> forbidden;
  forbidden.reserve(forbidden_set.size());
  for (const Fvec& v : forbidden_set) forbidden.push_back(to_arr6(v));

  // pencil lines of incident pairs: S must not contain them
  std::vector<PencilConstraint> pencils;
  u64 brute_incidences = 0;
  for (const ProjPoint& q : points) {
    for (const Hyperplane& pi : planes) {
      if (!incident(q, pi, F)) continue;
      ++brute_incidences;
      Fmat carrier = *pencil(q, pi, F);
      pencils.push_back({to_arr6(carrier[0]), to_arr6(carrier[1])});
    }
  }

  Rng rng(seed);
  u64 draws = 0;
  std::array<u64, 6> U{};
  while (true) {
    if (draws >= budget_draws)
      fail(Err::SearchExhausted,
           "no admissible covector within " + std::to_string(budget_draws) + " draws");
    ++draws;
    bool zero = true;
    for (int i = 0; i < 6; ++i) {
      U[i] = rng.below(F.p());
      if (U[i]) zero = false;
    }
    if (zero) continue;
    u64 uw = 0;
    for (int k = 0; k < 3; ++k) uw = F.add(uw, F.mul(U[k], U[k + 3]));
    if (uw == 0) continue;  // must be regular
    bool ok = true;
    for (const auto& X : forbidden) {
      if (dot6(U, X, F) == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const auto& pc : pencils) {
      if (dot6(U, pc.a, F) == 0 && dot6(U, pc.b, F) == 0) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }

  ReduceResult res{make_three_quadric(make_covector(Fvec(U.begin(), U.end()), F), F), {}, {},
                   draws, 0};
  for (const ProjPoint& q : points) res.alpha.push_back(restrict_to_g(res.g, q, F));
  for (const Hyperplane& pi : planes) res.beta.push_back(restrict_to_g(res.g, pi, F));

  // post-verify the contract on every success
  for (size_t i = 0; i < res.alpha.size(); ++i)
    for (size_t j = i + 1; j < res.alpha.size(); ++j)
      if (carrier_relation(res.alpha[i].carrier, res.alpha[j].carrier, F) != CarrierRelation::Skew)
        fail(Err::SearchExhausted, "alpha family verification failed");
  for (size_t i = 0; i < res.beta.size(); ++i)
    for (size_t j = i + 1; j < res.beta.size(); ++j)
      if (carrier_relation(res.beta[i].carrier, res.beta[j].carrier, F) != CarrierRelation::Skew)
        fail(Err::SearchExhausted, "beta family verification failed");
  u64 cross = 0;
  for (const GLine& a : res.alpha)
    for (const GLine& b : res.beta)
      if (carrier_relation(a.carrier, b.carrier, F) == CarrierRelation::Meet) ++cross;
  if (cross != brute_incidences)
    fail(Err::SearchExhausted, "cross-family incidence count mismatch");
  res.cross_incidences = cross;
  return res;
}

// ---------------------------------------------------------------------------
// pencil decomposition of line families

ConvertResult convert_lines(const ThreeQuadricG& g, const std::vector<Fmat>& carriers,
                            const Fp& F) {
  ConvertResult res;
  {
    std::set<Fmat> distinct(carriers.begin(), carriers.end());
    if (distinct.size() != carriers.size())
      fail(Err::InvalidConfig, "carrier list contains duplicates");
  }
  for (const Fmat& carrier : carriers) {
    std::vector<Pluecker> pts = carrier_points(carrier, F);
    std::vector<const Pluecker*> on;
    for (const Pluecker& L : pts)
      if (in_g(g, L, F)) on.push_back(&L);
    if (on.size() != pts.size())
      fail(Err::NotInG, "carrier has a rational point outside G");
    if (on.size() < 2) fail(Err::FewerThanTwoRationalPoints, "carrier too poor to decompose");
    LineP3 l1 = klein_preimage(*on[0], F);
    LineP3 l2 = klein_preimage(*on[1], F);
    auto rel = line_line_relation(l1, l2, F);
    if (rel.rel != LineRelation::Meet)
      fail(Err::NotInG, "preimage lines of a pencil fail to meet");
    res.points.push_back(*rel.meet);
    Fmat span = rref(stack_rows(l1.b, l2.b), F);
    if (span.size() != 3) fail(Err::NotInG, "preimage lines do not span a plane");
    Fmat cov = nullspace(span, F);
    res.planes.push_back(make_hyperplane(cov[0], F));
  }

  u64 n = carriers.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (incident(res.points[i], res.planes[j], F)) ++res.incidences;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (carrier_relation(carriers[i], carriers[j], F) == CarrierRelation::Meet)
        ++res.meeting_unordered_pairs;
  res.meeting_ordered_pairs = 2 * res.meeting_unordered_pairs;
  return res;
}

// ---------------------------------------------------------------------------
// projection to P^3

HyperplaneChart chart_of(const ThreeQuadricG& g, const Fp& F) {
  Fmat basis = nullspace(Fmat{g.s.c}, F);
  if (basis.size() != 5) fail(Err::InvalidConfig, "hyperplane basis degenerated");
  return HyperplaneChart{std::move(basis)};
}

Fmat to_p4(const HyperplaneChart& chart, const Fmat& carrier, const Fp& F) {
  // solve x = coeffs * basis for each carrier row; basis is rref so pivot
  // columns read the coefficients off directly
  std::vector<size_t> pivots;
  for (const Fvec& row : chart.basis) {
    size_t c = 0;
    while (row[c] == 0) ++c;
    pivots.push_back(c);
  }
  Fmat out;
  for (const Fvec& row : carrier) {
    Fvec coeff(5);
    for (int i = 0; i < 5; ++i) coeff[i] = row[pivots[i]];
    // consistency: the row must reconstruct exactly
    Fvec back(6, 0);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 6; ++j) back[j] = F.add(back[j], F.mul(coeff[i], chart.basis[i][j]));
    if (back != row) fail(Err::NotInG, "carrier is not inside the hyperplane");
    out.push_back(std::move(coeff));
  }
  return rref(std::move(out), F);
}

namespace {

enum class Rel5 { Equal, Meet, Skew };

Rel5 relation5(const Fmat& a, const Fmat& b, const Fp& F) {
  if (a == b) return Rel5::Equal;
  int r = rank(stack_rows(a, b), F);
  return r == 3 ? Rel5::Meet : Rel5::Skew;
}

}  // namespace

std::vector<LineP3> project_to_p3(const std::vector<Fmat>& lines_p4, const Fp& F, u64 seed,
                                  u64 budget_draws) {
  size_t n = lines_p4.size();
  if (budget_draws == 0) budget_draws = 1000 + 400 * n * n;
  std::vector<Rel5> want;
  want.reserve(n * (n - 1) / 2);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) want.push_back(relation5(lines_p4[i], lines_p4[j], F));

  // linear exclusion data for the fast pre-filter: the center must miss the
  // 3-space of every skew pair and the 2-plane of every meeting pair
  std::vector<std::array<u64, 5>> skew_duals;          // one covector per skew pair
  std::vector<std::array<std::array<u64, 5>, 2>> meet_duals;
  {
    size_t idx = 0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j, ++idx) {
        Fmat span = rref(stack_rows(lines_p4[i], lines_p4[j]), F);
        Fmat dual = nullspace(span, F);
        if (want[idx] == Rel5::Skew) {
          std::array<u64, 5> h{};
          for (int k = 0; k < 5; ++k) h[k] = dual[0][k];
          skew_duals.push_back(h);
        } else if (want[idx] == Rel5::Meet) {
          std::array<std::array<u64, 5>, 2> g{};
          for (int r = 0; r < 2; ++r)
            for (int k = 0; k < 5; ++k) g[r][k] = dual[r][k];
          meet_duals.push_back(g);
        }
      }
  }
  auto dot5 = [&](const std::array<u64, 5>& a, const Fvec& b) {
    u64 s = 0;
    for (int k = 0; k < 5; ++k) s = F.add(s, F.mul(a[k], b[k]));
    return s;
  };

  Rng rng(seed);
  for (u64 draw = 0; draw < budget_draws; ++draw) {
    Fvec c(5);
    bool zero = true;
    for (int i = 0; i < 5; ++i) {
      c[i] = rng.below(F.p());
      if (c[i]) zero = false;
    }
    if (zero) continue;
    bool admissible = true;
    for (const auto& h : skew_duals) {
      if (dot5(h, c) == 0) {
        admissible = false;
        break;
      }
    }
    if (!admissible) continue;
    for (const auto& g : meet_duals) {
      if (dot5(g[0], c) == 0 && dot5(g[1], c) == 0) {
        admissible = false;
        break;
      }
    }
    if (!admissible) continue;

    // drop coordinate: the last index where the center is nonzero
    size_t drop = 4;
    while (c[drop] == 0) --drop;
    auto project_point = [&](const Fvec& x) {
      // c[drop]*x - x[drop]*c, then delete the drop coordinate
      Fvec y(4);
      size_t k = 0;
      for (size_t j = 0; j < 5; ++j) {
        if (j == drop) continue;
        y[k++] = F.sub(F.mul(c[drop], x[j]), F.mul(x[drop], c[j]));
      }
      return y;
    };

    std::vector<LineP3> images;
    images.reserve(n);
    bool ok = true;
    for (const Fmat& l : lines_p4) {
      Fmat img{project_point(l[0]), project_point(l[1])};
      Fmat r = rref(img, F);
      if (r.size() != 2) {  // center lies on the line
        ok = false;
        break;
      }
      images.push_back(LineP3{std::move(r)});
    }
    if (!ok) continue;
    // full relation verification; the filter make this pass except for
    // degenerate coincidences, which fall through to the next draw
    size_t idx = 0;
    for (size_t i = 0; i < n && ok; ++i) {
      for (size_t j = i + 1; j < n && ok; ++j, ++idx) {
        auto rel = line_line_relation(images[i], images[j], F);
        Rel5 got = rel.rel == LineRelation::Equal ? Rel5::Equal
                   : rel.rel == LineRelation::Meet ? Rel5::Meet
                                                   : Rel5::Skew;
        if (got != want[idx]) ok = false;
      }
    }
    if (ok) return images;
  }
  fail(Err::SearchExhausted, "no projection center preserved all relations");
}

// ---------------------------------------------------------------------------
// the SL2 chart

ThreeQuadricG sl2_three_quadric(const Fp& F) {
  return make_three_quadric(make_covector(Fvec{0, 0, 1, 0, 0, F.p() - 1}, F), F);
}

ChartPoint sl2_embed_matrix(u64 a, u64 b, u64 c, u64 d, const Fp& F) {
  if (F.sub(F.mul(a, d), F.mul(b, c)) != 1)
    fail(Err::InvalidConfig, "matrix determinant must be 1");
  return ChartPoint{{a % F.p(), b % F.p(), d % F.p(), c % F.p()}};
}

Pluecker chart_to_pluecker(const ChartPoint& x, const Fp& F) {
  return make_pluecker(Fvec{x.x[0], x.x[1], 1, F.neg(x.x[2]), x.x[3], 1}, F);
}

Fmat chart_line_carrier(const ChartLine& l, const Fp& F) {
  ChartPoint p0{l.base};
  ChartPoint p1{{F.add(l.base[0], l.dir[0]), F.add(l.base[1], l.dir[1]),
                 F.add(l.base[2], l.dir[2]), F.add(l.base[3], l.dir[3])}};
  Fmat m{chart_to_pluecker(p0, F).c, chart_to_pluecker(p1, F).c};
  return rref(std::move(m), F);
}

std::vector<ChartPoint> sl2_points(const Fp& F, u64 budget) {
  u64 p = F.p();
  if (p * p * p > budget) fail(Err::BudgetExceeded, "p^3 exceeds the enumeration budget");
  std::vector<ChartPoint> out;
  out.reserve(p * p * p);
  for (u64 x1 = 0; x1 < p; ++x1) {
    for (u64 x2 = 0; x2 < p; ++x2) {
      for (u64 y2 = 0; y2 < p; ++y2) {
        if (x1 != 0) {
          u64 y1 = F.mul(F.inv(x1), F.add(1, F.mul(x2, y2)));
          out.push_back(ChartPoint{{x1, x2, y1, y2}});
        } else if (x2 != 0 && y2 == F.neg(F.inv(x2))) {
          for (u64 y1 = 0; y1 < p; ++y1) out.push_back(ChartPoint{{x1, x2, y1, y2}});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// direction matrices of lines through g are g*N with N nilpotent; the p+1
// nilpotent classes are [[a,1],[-a^2,-a]] and [[0,0],[1,0]]
std::vector<std::array<u64, 4>> nilpotent_reps(const Fp& F) {
  std::vector<std::array<u64, 4>> out;  // (n11, n12, n21, n22)
  for (u64 a = 0; a < F.p(); ++a)
    out.push_back({a, 1, F.neg(F.mul(a, a)), F.neg(a)});
  out.push_back({0, 0, 1, 0});
  return out;
}

ChartLine canonical_line(const std::array<u64, 4>& pt, const std::array<u64, 4>& dir,
                         const Fp& F) {
  std::array<u64, 4> d = dir;
  size_t lead = 0;
  while (d[lead] == 0) ++lead;
  u64 s = F.inv(d[lead]);
  for (u64& x : d) x = F.mul(x, s);
  std::array<u64, 4> b{};
  u64 t = pt[lead];
  for (int i = 0; i < 4; ++i) b[i] = F.sub(pt[i], F.mul(t, d[i]));
  return ChartLine{b, d};
}

}  // namespace

std::vector<ChartLine> sl2_lines(const Fp& F, u64 budget) {
  u64 p = F.p();
  if ((p + 1) * (p * p * p) > budget)
    fail(Err::BudgetExceeded, "(p+1)*p^3 line scan exceeds the budget");
  std::vector<ChartPoint> pts = sl2_points(F, budget);
  std::vector<std::array<u64, 4>> nil = nilpotent_reps(F);
  std::set<ChartLine> lines;
  for (const ChartPoint& g : pts) {
    // chart (x1,x2,y1,y2) is the matrix [[x1,x2],[y2,y1]]
    u64 g11 = g.x[0], g12 = g.x[1], g21 = g.x[3], g22 = g.x[2];
    for (const auto& N : nil) {
      u64 d11 = F.add(F.mul(g11, N[0]), F.mul(g12, N[2]));
      u64 d12 = F.add(F.mul(g11, N[1]), F.mul(g12, N[3]));
      u64 d21 = F.add(F.mul(g21, N[0]), F.mul(g22, N[2]));
      u64 d22 = F.add(F.mul(g21, N[1]), F.mul(g22, N[3]));
      lines.insert(canonical_line(g.x, {d11, d12, d22, d21}, F));
    }
  }
  return std::vector<ChartLine>(lines.begin(), lines.end());
}

CoverResult line_union_cover(const std::vector<ChartLine>& lines, const Fp& F) {
  u64 p = F.p();
  std::set<std::array<u64, 4>> pts;
  for (const ChartLine& l : lines) {
    for (u64 t = 0; t < p; ++t) {
      std::array<u64, 4> q{};
      for (int i = 0; i < 4; ++i) q[i] = F.add(l.base[i], F.mul(t, l.dir[i]));
      pts.insert(q);
    }
  }
  return CoverResult{pts.size(), Ratio{pts.size(), p * p * p}};
}

}  // namespace kil
