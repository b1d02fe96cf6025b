#include <set>

#include "doctest.h"
#include "kil/complexes.hpp"

using namespace kil;

TEST_CASE("complex classification") {
  Fp F(5);
  CHECK(classify_complex(make_covector({1, 0, 0, 1, 0, 0}, F), F).cls == ComplexClass::Regular);
  auto sing = classify_complex(make_covector({1, 0, 0, 0, 1, 0}, F), F);
  CHECK(sing.cls == ComplexClass::Singular);
  // tangency point: T_L K must equal the hyperplane, i.e. L=(w:u)
  CHECK(sing.tangency->c == Fvec{0, 1, 0, 1, 0, 0});
}

TEST_CASE("singular covers are exactly the dual quadric points, exhaustive p=3") {
  Fp F(3);
  u64 covectors = 0, singular = 0;
  for (const ProjPoint& x : enumerate_points(5, F)) {
    ++covectors;
    auto c = classify_complex(ComplexCovector{x.c}, F);
    if (c.cls == ComplexClass::Singular) {
      ++singular;
      // the tangency point is on K and pairs to zero with the covector
      CHECK(on_klein(*c.tangency, F));
      CHECK(pair_with(ComplexCovector{x.c}, *c.tangency, F) == 0);
    }
  }
  CHECK(covectors == 364);
  CHECK(singular == 130);  // |K(F_3)|
}

TEST_CASE("singular tangency point is the unique L with T_L K = S") {
  Fp F(3);
  // u=(1,2,0), w=(1,1,0): u.w = 3 = 0 mod 3
  auto sing = classify_complex(make_covector({1, 2, 0, 1, 1, 0}, F), F);
  REQUIRE(sing.cls == ComplexClass::Singular);
  // the lines of the singular complex are exactly the lines meeting l
  LineP3 l = klein_preimage(*sing.tangency, F);
  ComplexCovector U = make_covector({1, 2, 0, 1, 1, 0}, F);
  for (const LineP3& x : enumerate_lines_p3(F)) {
    bool in_complex = pair_with(U, klein_map(x, F), F) == 0;
    bool meets = line_line_relation(l, x, F).rel != LineRelation::Skew;
    CHECK(in_complex == meets);
  }
}

TEST_CASE("restrict_to_g cuts alpha/beta planes along lines of G") {
  Fp F(3);
  ThreeQuadricG g = make_three_quadric(make_covector({1, 0, 0, 1, 0, 0}, F), F);
  auto pts = enumerate_points(3, F);
  std::set<Fmat> carriers;
  for (const ProjPoint& q : pts) {
    GLine gl = restrict_to_g(g, q, F);
    auto kpts = carrier_points(gl.carrier, F);
    CHECK(kpts.size() == 4);  // p+1 rational points on the cut line
    for (const Pluecker& L : kpts) CHECK(in_g(g, L, F));
    carriers.insert(gl.carrier);
  }
  CHECK(carriers.size() == pts.size());  // distinct points give distinct lines

  // beta side: preimages of carrier points stay inside the plane
  for (const Hyperplane& pi : enumerate_hyperplanes(3, F)) {
    GLine gl = restrict_to_g(g, pi, F);
    for (const Pluecker& L : carrier_points(gl.carrier, F)) {
      LineP3 l = klein_preimage(L, F);
      CHECK(dot(l.b[0], pi.c, F) == 0);
      CHECK(dot(l.b[1], pi.c, F) == 0);
    }
  }
}

TEST_CASE("null polarity from a regular covector") {
  Fp F(3);
  ComplexCovector U = make_covector({1, 0, 0, 1, 0, 0}, F);
  NullPolarity np = null_polarity_from(U, F);
  // q always lies on its polar plane (skew symmetry)
  for (const ProjPoint& q : enumerate_points(3, F))
    CHECK(incident(q, polar_plane(np, q, F), F));
  // invariant lines = K-points on S, both |G(F_3)| = 40
  u64 invariant = 0, on_s = 0;
  for (const LineP3& l : enumerate_lines_p3(F)) {
    Pluecker L = klein_map(l, F);
    bool inv = line_invariant(np, l, F);
    bool in_s = pair_with(U, L, F) == 0;
    CHECK(inv == in_s);
    invariant += inv;
    on_s += in_s;
  }
  CHECK(invariant == 40);
  CHECK(on_s == 40);

  CHECK_THROWS_AS(null_polarity_from(make_covector({1, 0, 0, 0, 1, 0}, F), F), Error);
}

TEST_CASE("reduce_incidence: single incident pair") {
  Fp F(101);
  std::vector<ProjPoint> P{make_point({1, 0, 0, 0}, F)};
  std::vector<Hyperplane> Pi{make_hyperplane({0, 0, 0, 1}, F)};
  ReduceResult r = reduce_incidence(P, Pi, F, 0);
  CHECK(r.alpha.size() == 1);
  CHECK(r.beta.size() == 1);
  CHECK(r.cross_incidences == 1);
}

TEST_CASE("reduce_incidence: random m=n=30 over F_101 reproduces the count") {
  Fp F(101);
  // deterministic arrangement from the projspace enumeration order
  std::vector<ProjPoint> P;
  std::vector<Hyperplane> Pi;
  Rng rng(42);
  std::set<Fvec> used_p, used_h;
  while (P.size() < 30) {
    Fvec v(4);
    for (auto& x : v) x = rng.below(101);
    if (is_zero_vec(v)) continue;
    Fvec c = proj_normalize(v, F);
    if (used_p.insert(c).second) P.push_back(ProjPoint{c});
  }
  while (Pi.size() < 30) {
    Fvec v(4);
    for (auto& x : v) x = rng.below(101);
    if (is_zero_vec(v)) continue;
    Fvec c = proj_normalize(v, F);
    if (used_h.insert(c).second) Pi.push_back(Hyperplane{c});
  }
  u64 brute = 0;
  for (const auto& q : P)
    for (const auto& pi : Pi)
      if (incident(q, pi, F)) ++brute;
  ReduceResult r = reduce_incidence(P, Pi, F, 9);
  CHECK(r.cross_incidences == brute);
  // family disjointness is part of the verified contract; spot-check anyway
  for (size_t i = 0; i < r.alpha.size(); ++i)
    for (size_t j = i + 1; j < r.alpha.size(); ++j)
      CHECK(carrier_relation(r.alpha[i].carrier, r.alpha[j].carrier, F) == CarrierRelation::Skew);
}

TEST_CASE("reduce_incidence exhausts on a small field with a large arrangement") {
  Fp F(3);
  auto pts = enumerate_points(3, F);
  auto pls = enumerate_hyperplanes(3, F);
  std::vector<ProjPoint> P(pts.begin(), pts.begin() + 20);
  std::vector<Hyperplane> Pi(pls.begin(), pls.begin() + 20);
  CHECK_THROWS_AS(reduce_incidence(P, Pi, F, 0), Error);
  try {
    reduce_incidence(P, Pi, F, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Err::SearchExhausted);
  }
}

TEST_CASE("sl2 chart: embedding and size") {
  Fp F(3);
  auto pts = sl2_points(F);
  CHECK(pts.size() == 24);  // p(p^2-1)
  ChartPoint id = sl2_embed_matrix(1, 0, 0, 1, F);
  CHECK(F.sub(F.mul(id.x[0], id.x[2]), F.mul(id.x[1], id.x[3])) == 1);
  CHECK_THROWS_AS(sl2_embed_matrix(1, 1, 1, 1, F), Error);

  // injective into G
  ThreeQuadricG g = sl2_three_quadric(F);
  std::set<Fvec> images;
  for (const ChartPoint& x : pts) {
    Pluecker L = chart_to_pluecker(x, F);
    CHECK(in_g(g, L, F));
    images.insert(L.c);
  }
  CHECK(images.size() == pts.size());

  // affine part of G is exactly the embedded group: count G-points with P03 != 0
  u64 affine = 0, total = 0;
  for (const ProjPoint& x : enumerate_points(5, F)) {
    if (!in_g(g, Pluecker{x.c}, F)) continue;
    ++total;
    if (x.c[2] != 0) ++affine;
  }
  CHECK(total == 40);  // (p+1)(p^2+1)
  CHECK(affine == pts.size());
}

TEST_CASE("sl2 lines: census and straightness of unipotent cosets") {
  for (u64 p : {3ull, 5ull}) {
    Fp F(p);
    auto lines = sl2_lines(F);
    CHECK(lines.size() == (p + 1) * (p + 1) * (p - 1));
    // brute-force census: every (point, direction) pair defining a contained line
    auto pts = sl2_points(F);
    std::set<ChartLine> brute;
    std::vector<std::array<u64, 4>> dirs;
    {
      // canonical direction classes of F_p^4
      dirs.push_back({0, 0, 0, 1});
      for (u64 a = 0; a < p; ++a) dirs.push_back({0, 0, 1, a});
      for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b) dirs.push_back({0, 1, a, b});
      for (u64 a = 0; a < p; ++a)
        for (u64 b = 0; b < p; ++b)
          for (u64 c = 0; c < p; ++c) dirs.push_back({1, a, b, c});
    }
    for (const ChartPoint& q : pts) {
      for (const auto& d : dirs) {
        bool inside = true;
        for (u64 t = 0; t < p && inside; ++t) {
          u64 x1 = F.add(q.x[0], F.mul(t, d[0]));
          u64 x2 = F.add(q.x[1], F.mul(t, d[1]));
          u64 y1 = F.add(q.x[2], F.mul(t, d[2]));
          u64 y2 = F.add(q.x[3], F.mul(t, d[3]));
          if (F.sub(F.mul(x1, y1), F.mul(x2, y2)) != 1) inside = false;
        }
        if (!inside) continue;
        std::array<u64, 4> dd = d;
        size_t lead = 0;
        while (dd[lead] == 0) ++lead;
        std::array<u64, 4> base{};
        for (int i = 0; i < 4; ++i) base[i] = F.sub(q.x[i], F.mul(q.x[lead], dd[i]));
        brute.insert(ChartLine{base, dd});
      }
    }
    CHECK(brute.size() == lines.size());
    CHECK(std::set<ChartLine>(lines.begin(), lines.end()) == brute);
  }

  // unipotent cosets are straight: g * [[1,t],[0,1]] is linear in t
  Fp F(3);
  for (const ChartPoint& g : sl2_points(F)) {
    u64 a = g.x[0], b = g.x[1], d = g.x[2], c = g.x[3];
    // coset points (a, at+b, ct+d, c) must land on one enumerated line
    std::set<std::array<u64, 4>> coset;
    for (u64 t = 0; t < 3; ++t)
      coset.insert({a, F.add(F.mul(a, t), b), F.add(F.mul(c, t), d), c});
    CHECK(coset.size() == 3);
    // straight iff differences are proportional: all points base + t*dir
    auto it = coset.begin();
    auto p0 = *it++;
    auto p1 = *it++;
    auto p2 = *it;
    Fmat diff{Fvec{F.sub(p1[0], p0[0]), F.sub(p1[1], p0[1]), F.sub(p1[2], p0[2]),
                   F.sub(p1[3], p0[3])},
              Fvec{F.sub(p2[0], p0[0]), F.sub(p2[1], p0[1]), F.sub(p2[2], p0[2]),
                   F.sub(p2[3], p0[3])}};
    CHECK(rank(diff, F) == 1);
  }
}

TEST_CASE("sl2 carriers live inside G") {
  Fp F(5);
  ThreeQuadricG g = sl2_three_quadric(F);
  auto lines = sl2_lines(F);
  for (size_t i = 0; i < lines.size(); i += 17) {
    Fmat carrier = chart_line_carrier(lines[i], F);
    for (const Pluecker& L : carrier_points(carrier, F)) CHECK(in_g(g, L, F));
  }
}

TEST_CASE("line_union_cover") {
  Fp F(5);
  auto lines = sl2_lines(F);
  CoverResult full = line_union_cover(lines, F);
  CHECK(full.union_size == 120);  // the whole group
  CHECK(line_union_cover({}, F).union_size == 0);
}

TEST_CASE("convert_lines identities") {
  Fp F(11);
  ThreeQuadricG g = sl2_three_quadric(F);
  auto all = sl2_lines(F);

  // single line: one incident pair, no meetings
  {
    std::vector<Fmat> carriers{chart_line_carrier(all[0], F)};
    ConvertResult res = convert_lines(g, carriers, F);
    CHECK(res.incidences == 1);
    CHECK(res.meeting_ordered_pairs == 0);
    CHECK(incident(res.points[0], res.planes[0], F));
  }

  // two meeting lines: the shared K-point forces all four incidences
  {
    // lines through the identity with two different nilpotent directions meet there
    ChartLine l1{}, l2{};
    bool found = false;
    for (size_t i = 0; i < all.size() && !found; ++i)
      for (size_t j = i + 1; j < all.size() && !found; ++j) {
        Fmat a = chart_line_carrier(all[i], F);
        Fmat b = chart_line_carrier(all[j], F);
        if (carrier_relation(a, b, F) == CarrierRelation::Meet) {
          l1 = all[i];
          l2 = all[j];
          found = true;
        }
      }
    REQUIRE(found);
    std::vector<Fmat> carriers{chart_line_carrier(l1, F), chart_line_carrier(l2, F)};
    ConvertResult res = convert_lines(g, carriers, F);
    CHECK(res.meeting_unordered_pairs == 1);
    CHECK(res.incidences == 4);
    CHECK(res.meeting_ordered_pairs == res.incidences - 2);
  }

  // random ten lines: ordered meetings = |I| - n
  Rng rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    std::set<u64> picked;
    while (picked.size() < 10) picked.insert(rng.below(all.size()));
    std::vector<Fmat> carriers;
    for (u64 idx : picked) carriers.push_back(chart_line_carrier(all[idx], F));
    ConvertResult res = convert_lines(g, carriers, F);
    CHECK(res.meeting_ordered_pairs == res.incidences - 10);
  }
}

TEST_CASE("convert then reduce preserves the meeting count") {
  Fp F(11);
  ThreeQuadricG g = sl2_three_quadric(F);
  auto all = sl2_lines(F);
  Rng rng(13);
  std::set<u64> picked;
  while (picked.size() < 8) picked.insert(rng.below(all.size()));
  std::vector<Fmat> carriers;
  for (u64 idx : picked) carriers.push_back(chart_line_carrier(all[idx], F));
  ConvertResult conv = convert_lines(g, carriers, F);
  ReduceResult red = reduce_incidence(conv.points, conv.planes, F, 3);
  CHECK(red.cross_incidences == conv.incidences);
}

TEST_CASE("project_to_p3 preserves all pair relations") {
  Fp F(101);
  ThreeQuadricG g = sl2_three_quadric(F);
  HyperplaneChart chart = chart_of(g, F);

  // a bundle of G-lines: restrictions of alpha planes of seeded points and
  // beta planes of seeded hyperplanes (mixed, so meets and skews both occur)
  Rng rng(23);
  std::vector<Fmat> p4;
  std::set<Fmat> dedupe;
  while (p4.size() < 50) {
    Fvec v(4);
    for (auto& x : v) x = rng.below(101);
    if (is_zero_vec(v)) continue;
    GLine gl = p4.size() % 2 == 0 ? restrict_to_g(g, ProjPoint{proj_normalize(v, F)}, F)
                                  : restrict_to_g(g, Hyperplane{proj_normalize(v, F)}, F);
    if (!dedupe.insert(gl.carrier).second) continue;
    p4.push_back(to_p4(chart, gl.carrier, F));
  }

  std::vector<LineP3> images = project_to_p3(p4, F, 1);
  size_t n = p4.size();
  u64 meets = 0, skews = 0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      int r5 = rank(stack_rows(p4[i], p4[j]), F);
      auto rel = line_line_relation(images[i], images[j], F);
      if (r5 == 3) {
        CHECK(rel.rel == LineRelation::Meet);
        ++meets;
      }
      if (r5 == 4) {
        CHECK(rel.rel == LineRelation::Skew);
        ++skews;
      }
    }
  CHECK(meets + skews == n * (n - 1) / 2);
  CHECK(meets > 0);
  CHECK(skews > 0);
}

TEST_CASE("convert then reduce at p=101 via restriction lines") {
  Fp F(101);
  ThreeQuadricG g = sl2_three_quadric(F);
  Rng rng(31);
  std::vector<Fmat> carriers;
  std::set<Fmat> dedupe;
  while (carriers.size() < 10) {
    Fvec v(4);
    for (auto& x : v) x = rng.below(101);
    if (is_zero_vec(v)) continue;
    GLine gl = carriers.size() % 2 ? restrict_to_g(g, ProjPoint{proj_normalize(v, F)}, F)
                                   : restrict_to_g(g, Hyperplane{proj_normalize(v, F)}, F);
    if (dedupe.insert(gl.carrier).second) carriers.push_back(gl.carrier);
  }
  ConvertResult conv = convert_lines(g, carriers, F);
  CHECK(conv.meeting_ordered_pairs == conv.incidences - 10);
  ReduceResult red = reduce_incidence(conv.points, conv.planes, F, 8);
  CHECK(red.cross_incidences == conv.incidences);
}

TEST_CASE("every admissible covector yields an exact reduction, exhaustive p=3") {
  Fp F(3);
  // small arrangement with incident and non-incident pairs
  std::vector<ProjPoint> P{make_point({1, 0, 0, 0}, F), make_point({0, 1, 0, 0}, F),
                           make_point({1, 1, 1, 0}, F)};
  std::vector<Hyperplane> Pi{make_hyperplane({0, 0, 0, 1}, F), make_hyperplane({1, 2, 0, 0}, F),
                             make_hyperplane({0, 0, 1, 2}, F)};
  u64 expected = 0;
  for (const auto& q : P)
    for (const auto& pi : Pi)
      if (incident(q, pi, F)) ++expected;
  REQUIRE(expected > 0);

  // the definition's exclusion data
  std::vector<Pluecker> same_type;
  for (size_t i = 0; i < P.size(); ++i)
    for (size_t j = i + 1; j < P.size(); ++j)
      same_type.push_back(klein_map(line_from_points(P[i], P[j], F), F));
  for (size_t i = 0; i < Pi.size(); ++i)
    for (size_t j = i + 1; j < Pi.size(); ++j)
      same_type.push_back(klein_map(plane_intersection_line(Pi[i], Pi[j], F), F));
  std::vector<Fmat> pencils;
  for (const auto& q : P)
    for (const auto& pi : Pi)
      if (auto pc = pencil(q, pi, F)) pencils.push_back(*pc);

  u64 admissible = 0;
  for (const ProjPoint& u : enumerate_points(5, F)) {
    ComplexCovector U{u.c};
    if (classify_complex(U, F).cls != ComplexClass::Regular) continue;
    bool ok = true;
    for (const Pluecker& X : same_type)
      if (pair_with(U, X, F) == 0) ok = false;
    for (const Fmat& pc : pencils)
      if (dot(U.c, pc[0], F) == 0 && dot(U.c, pc[1], F) == 0) ok = false;
    if (!ok) continue;
    ++admissible;
    // the definition guarantees exactness; check it end to end
    ThreeQuadricG g = make_three_quadric(U, F);
    std::vector<GLine> alpha, beta;
    for (const auto& q : P) alpha.push_back(restrict_to_g(g, q, F));
    for (const auto& pi : Pi) beta.push_back(restrict_to_g(g, pi, F));
    for (size_t i = 0; i < alpha.size(); ++i)
      for (size_t j = i + 1; j < alpha.size(); ++j)
        REQUIRE(carrier_relation(alpha[i].carrier, alpha[j].carrier, F) ==
                CarrierRelation::Skew);
    for (size_t i = 0; i < beta.size(); ++i)
      for (size_t j = i + 1; j < beta.size(); ++j)
        REQUIRE(carrier_relation(beta[i].carrier, beta[j].carrier, F) == CarrierRelation::Skew);
    u64 cross = 0;
    for (const GLine& a : alpha)
      for (const GLine& b : beta)
        if (carrier_relation(a.carrier, b.carrier, F) == CarrierRelation::Meet) ++cross;
    REQUIRE(cross == expected);
  }
  CHECK(admissible > 0);

  // the sampler lands on an admissible covector and reports the same count
  ReduceResult r = reduce_incidence(P, Pi, F, 1);
  CHECK(r.cross_incidences == expected);
}
