#include <numeric>
#include <set>

#include "doctest.h"
#include "kil/applications.hpp"
#include "kil/constructions.hpp"
#include "kil/klein.hpp"

using namespace kil;

TEST_CASE("coprime grid") {
  Fp F17(17);
  auto s2 = coprime_grid(2, F17);
  CHECK(s2 == std::vector<AffinePoint2>{{1, 1}, {1, 2}, {2, 1}});
  auto s1 = coprime_grid(1, F17);
  CHECK(s1 == std::vector<AffinePoint2>{{1, 1}});

  Fp F401(401);
  auto s10 = coprime_grid(10, F401);
  // inclusion-exclusion oracle: |S| = sum_{d} mu(d) * floor(n/d)^2
  int mu[11] = {0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1};
  i64 expect = 0;
  for (int d = 1; d <= 10; ++d) expect += i64(mu[d]) * i64(10 / d) * i64(10 / d);
  CHECK(s10.size() == static_cast<u64>(expect));
  CHECK(s10.size() == 63);

  CHECK_THROWS_AS(coprime_grid(10, Fp(101)), Error);  // 101 <= 400
  // no two grid points are F_p-proportional when p > 4n^2
  for (size_t i = 0; i < s10.size(); ++i)
    for (size_t j = i + 1; j < s10.size(); ++j) {
      u64 cross = F401.sub(F401.mul(s10[i][0], s10[j][1]), F401.mul(s10[i][1], s10[j][0]));
      CHECK(cross != 0);
    }
}

TEST_CASE("isotropic directions") {
  Fp F5(5);
  auto dirs5 = isotropic_directions(F5);
  CHECK(dirs5.size() == 6);  // p+1
  bool has120 = false;
  for (const auto& d : dirs5) {
    u64 nn = 0;
    for (u64 x : d.c) nn = F5.add(nn, F5.mul(x, x));
    CHECK(nn == 0);
    if (d.c == Fvec{1, 2, 0}) has120 = true;
  }
  CHECK(has120);  // 1 + 4 = 0 mod 5
  CHECK(isotropic_directions(Fp(3)).size() == 4);
  CHECK(isotropic_directions(Fp(7)).size() == 8);
}

TEST_CASE("semi-isotropic grid distances") {
  Fp F(31);
  SemiIsotropicGrid g = semi_isotropic_grid(3, 10, F);
  CHECK(g.points.size() == 30);
  // construction invariants
  auto nrm = [&](const AffinePoint3& v) {
    return F.add(F.add(F.mul(v[0], v[0]), F.mul(v[1], v[1])), F.mul(v[2], v[2]));
  };
  auto dotp = [&](const AffinePoint3& a, const AffinePoint3& b) {
    return F.add(F.add(F.mul(a[0], b[0]), F.mul(a[1], b[1])), F.mul(a[2], b[2]));
  };
  CHECK(nrm(g.e1) == 0);
  CHECK(nrm(g.e2) != 0);
  CHECK(dotp(g.e1, g.e2) == 0);

  // distinct pairwise distances stay at k values (offset differences squared)
  std::set<u64> dists;
  for (const auto& a : g.points)
    for (const auto& b : g.points) dists.insert(dist2(a, b, F));
  CHECK(dists.size() <= 2 * 3 + 1);
  CHECK(dists.size() == 3);  // {0, 1, 4} * ||e2||^2

  // k=1: a single isotropic line, all distances zero
  SemiIsotropicGrid g1 = semi_isotropic_grid(1, 7, F);
  for (const auto& a : g1.points)
    for (const auto& b : g1.points) CHECK(dist2(a, b, F) == 0);

  // e1 is isotropic at p=5 as well ((1:2:0) works there: 1+4=0)
  Fp F5(5);
  SemiIsotropicGrid g5 = semi_isotropic_grid(2, 3, F5);
  u64 n5 = 0;
  for (u64 x : g5.e1) n5 = F5.add(n5, F5.mul(x, x));
  CHECK(n5 == 0);
}

TEST_CASE("isotropic regulus") {
  Fp F(5);
  auto members = isotropic_regulus(1, F);
  CHECK(members.size() == 6);  // p+1
  auto dirs = isotropic_directions(F);
  std::set<Fvec> dirset;
  for (const auto& d : dirs) dirset.insert(d.c);
  u64 minus_lambda2 = F.neg(1);
  for (const LineP3& l : members) {
    Pluecker L = klein_map(l, F);
    // moment = lambda * direction
    Fvec w{L.c[0], L.c[1], L.c[2]}, v{L.c[3], L.c[4], L.c[5]};
    // scale so the relation v = lambda*w holds for the normalized rep
    bool proportional = rank(Fmat{w, v}, F) <= 1;
    CHECK(proportional);
    CHECK(dirset.count(proj_normalize(w, F)));
    // every affine point sits on the level set ||q||^2 = -lambda^2
    for (const ProjPoint& q : line_points(l, F)) {
      if (q.c[0] == 0) continue;
      u64 nn = 0;
      for (int i = 1; i < 4; ++i) nn = F.add(nn, F.mul(q.c[i], q.c[i]));
      CHECK(nn == minus_lambda2);
    }
  }
  // members are pairwise skew
  for (size_t i = 0; i < members.size(); ++i)
    for (size_t j = i + 1; j < members.size(); ++j)
      CHECK(line_line_relation(members[i], members[j], F).rel == LineRelation::Skew);

  CHECK_THROWS_AS(isotropic_regulus(0, F), Error);
}

TEST_CASE("cubic surface census at p=7") {
  Fp F(7);
  CubicSurface surf = cubic_surface_points(F, {1, 1, 1, 1});
  // independent point count
  u64 brute = 0;
  for (u64 x = 0; x < 7; ++x)
    for (u64 y = 0; y < 7; ++y)
      for (u64 z = 0; z < 7; ++z)
        if (F.add(F.add(F.pow(x, 3), F.pow(y, 3)), F.pow(z, 3)) == 1) ++brute;
  CHECK(surf.all_points.size() == brute);
  // generous Weil band
  CHECK(surf.all_points.size() <= 49 + 12 * 7);
  CHECK(surf.lines_found <= 27);
  // after removal no four points are collinear
  if (surf.points.size() >= 2) {
    std::vector<ProjPoint> pts;
    for (const auto& q : surf.points) pts.push_back(make_point(Fvec{1, q[0], q[1], q[2]}, F));
    CHECK(max_collinear(pts, F).k <= 3);
  }
  // removed lines really lay on the surface
  for (const auto& [base, dir] : surf.removed_lines) {
    for (u64 t = 0; t < 7; ++t) {
      u64 x = F.add(base[0], F.mul(t, dir[0]));
      u64 y = F.add(base[1], F.mul(t, dir[1]));
      u64 z = F.add(base[2], F.mul(t, dir[2]));
      CHECK(F.add(F.add(F.pow(x, 3), F.pow(y, 3)), F.pow(z, 3)) == 1);
    }
  }
}

TEST_CASE("random arrangements") {
  Fp F(101);
  Arrangement a1 = random_arrangement(30, 20, F, 7);
  Arrangement a2 = random_arrangement(30, 20, F, 7);
  CHECK(a1.points == a2.points);  // determinism
  CHECK(a1.planes == a2.planes);
  Arrangement a3 = random_arrangement(30, 20, F, 8);
  CHECK(a1.points != a3.points);
  validate(a1, F);

  Arrangement cl = random_arrangement(10, 40, F, 3, ArrangementMode::Clustered, 10);
  CHECK(max_collinear(cl.planes, F).k == 10);

  Arrangement empty = random_arrangement(0, 5, F, 1);
  CHECK(empty.points.empty());
  CHECK(count_incidences(empty, F).incidences == 0);
}

TEST_CASE("point_by_index matches enumeration order") {
  Fp F(3);
  auto pts = enumerate_points(3, F);
  for (size_t i = 0; i < pts.size(); ++i) CHECK(point_by_index(i, F) == pts[i]);
  CHECK_THROWS_AS(point_by_index(pts.size(), F), Error);
}

TEST_CASE("cubic surface at p=11: rational lines are few and removal leaves k=3") {
  Fp F(11);
  CubicSurface surf = cubic_surface_points(F, {1, 1, 1, 1});
  CHECK(surf.lines_found == 3);
  CHECK(surf.points.size() == 91);
  std::vector<ProjPoint> pts;
  for (const auto& q : surf.points) pts.push_back(make_point(Fvec{1, q[0], q[1], q[2]}, F));
  CHECK(max_collinear(pts, F).k == 3);
}
