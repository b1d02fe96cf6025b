#include "kil/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "kil/klein.hpp"

namespace kil {

std::vector<AffinePoint2> coprime_grid(u64 n, const Fp& F) {
  if (F.p() <= 4 * n * n)
    fail(Err::ModulusTooSmall, "need p > 4n^2 so grid dot products stay below p");
  std::vector<AffinePoint2> out;
  for (u64 a = 1; a <= n; ++a)
    for (u64 b = 1; b <= n; ++b)
      if (std::gcd(a, b) == 1) out.push_back({a, b});
  return out;
}

namespace {

// canonical affine direction classes of F_p^3: first nonzero coordinate 1
std::vector<AffinePoint3> direction_classes3(const Fp& F) {
  std::vector<AffinePoint3> dirs;
  u64 p = F.p();
  dirs.push_back({0, 0, 1});
  for (u64 c = 0; c < p; ++c) dirs.push_back({0, 1, c});
  for (u64 b = 0; b < p; ++b)
    for (u64 c = 0; c < p; ++c) dirs.push_back({1, b, c});
  return dirs;
}

}  // namespace

CubicSurface cubic_surface_points(const Fp& F, const std::array<u64, 4>& coeffs, u64 budget) {
  u64 p = F.p();
  // p^2 point scan plus ~p^4 line candidates (early exit prunes the p factor)
  if (p * p + p * p * (p * p + p + 1) > budget)
    fail(Err::BudgetExceeded, "cubic line scan over budget");
  auto on_surface = [&](u64 x, u64 y, u64 z) {
    u64 s = F.mul(coeffs[0], F.pow(x, 3));
    s = F.add(s, F.mul(coeffs[1], F.pow(y, 3)));
    s = F.add(s, F.mul(coeffs[2], F.pow(z, 3)));
    return s == coeffs[3];
  };
  CubicSurface out;
  std::set<AffinePoint3> pts;
  // cube-root table keeps the scan at O(p^2)
  std::map<u64, std::vector<u64>> cubes;
  for (u64 z = 0; z < p; ++z) cubes[F.mul(coeffs[2], F.pow(z, 3))].push_back(z);
  for (u64 x = 0; x < p; ++x) {
    for (u64 y = 0; y < p; ++y) {
      u64 need = F.sub(coeffs[3],
                       F.add(F.mul(coeffs[0], F.pow(x, 3)), F.mul(coeffs[1], F.pow(y, 3))));
      auto it = cubes.find(need);
      if (it == cubes.end()) continue;
      for (u64 z : it->second) pts.insert({x, y, z});
    }
  }
  out.all_points.assign(pts.begin(), pts.end());

  // exhaustive line scan: a line fully on the surface is removed
  std::set<AffinePoint3> on_removed;
  for (const AffinePoint3& d : direction_classes3(F)) {
    size_t lead = 0;
    while (d[lead] == 0) ++lead;
    // base points with base[lead] = 0 parameterize lines of this direction once
    for (u64 b1 = 0; b1 < p; ++b1) {
      for (u64 b2 = 0; b2 < p; ++b2) {
        AffinePoint3 base{};
        size_t k = 0;
        for (size_t i = 0; i < 3; ++i) base[i] = i == lead ? 0 : (k++ == 0 ? b1 : b2);
        bool contained = true;
        for (u64 t = 0; t < p && contained; ++t) {
          u64 x = F.add(base[0], F.mul(t, d[0]));
          u64 y = F.add(base[1], F.mul(t, d[1]));
          u64 z = F.add(base[2], F.mul(t, d[2]));
          if (!on_surface(x, y, z)) contained = false;
        }
        if (!contained) continue;
        ++out.lines_found;
        out.removed_lines.push_back({base, d});
        for (u64 t = 0; t < p; ++t)
          on_removed.insert({F.add(base[0], F.mul(t, d[0])), F.add(base[1], F.mul(t, d[1])),
                             F.add(base[2], F.mul(t, d[2]))});
      }
    }
  }
  if (out.lines_found > 27)
    fail(Err::DegenerateCubic, "surface carries " + std::to_string(out.lines_found) +
                                   " lines; it must contain a plane");
  for (const AffinePoint3& q : out.all_points)
    if (!on_removed.count(q)) out.points.push_back(q);
  return out;
}

std::vector<ProjPoint> isotropic_directions(const Fp& F) {
  std::vector<ProjPoint> out;
  u64 p = F.p();
  auto norm2 = [&](u64 x, u64 y, u64 z) {
    return F.add(F.add(F.mul(x, x), F.mul(y, y)), F.mul(z, z));
  };
  auto consider = [&](u64 x, u64 y, u64 z) {
    if (norm2(x, y, z) == 0) out.push_back(ProjPoint{Fvec{x, y, z}});
  };
  consider(0, 0, 1);
  for (u64 c = 0; c < p; ++c) consider(0, 1, c);
  for (u64 b = 0; b < p; ++b)
    for (u64 c = 0; c < p; ++c) consider(1, b, c);
  return out;
}

SemiIsotropicGrid semi_isotropic_grid(u64 k, u64 l, const Fp& F, u64 budget) {
  if (k > l) fail(Err::InvalidConfig, "need k <= l");
  if (k * l > budget) fail(Err::BudgetExceeded, "grid size over budget");
  if (k > F.p() || l > F.p()) fail(Err::InvalidConfig, "offsets collide when k or l exceeds p");
  // e1 = (1, a, b) isotropic via a^2 + b^2 = -1
  auto [a, b] = F.sum_two_squares(F.neg(1));
  AffinePoint3 e1{1, a, b};
  // complete inside e1-perp: any independent solution of e1·x = 0
  Fmat perp = nullspace(Fmat{Fvec{e1[0], e1[1], e1[2]}}, F);
  Fvec e2v = perp[0];
  // the radical of the plane is <e1>; avoid picking e1 itself
  {
    Fvec e1v{e1[0], e1[1], e1[2]};
    if (proj_normalize(e2v, F) == proj_normalize(e1v, F)) e2v = perp[1];
  }
  u64 e2n = F.add(F.add(F.mul(e2v[0], e2v[0]), F.mul(e2v[1], e2v[1])), F.mul(e2v[2], e2v[2]));
  if (e2n == 0) fail(Err::InvalidConfig, "companion direction degenerated");
  SemiIsotropicGrid grid;
  grid.e1 = e1;
  grid.e2 = {e2v[0], e2v[1], e2v[2]};
  grid.k = k;
  grid.l = l;
  for (u64 i = 0; i < k; ++i)
    for (u64 j = 0; j < l; ++j)
      grid.points.push_back({F.add(F.mul(i, grid.e2[0]), F.mul(j, e1[0])),
                             F.add(F.mul(i, grid.e2[1]), F.mul(j, e1[1])),
                             F.add(F.mul(i, grid.e2[2]), F.mul(j, e1[2]))});
  return grid;
}

std::vector<LineP3> isotropic_regulus(u64 lambda, const Fp& F) {
  lambda %= F.p();
  if (lambda == 0) fail(Err::InvalidConfig, "lambda must be nonzero");
  std::vector<LineP3> out;
  for (const ProjPoint& w : isotropic_directions(F)) {
    Fvec pl(6);
    for (int i = 0; i < 3; ++i) {
      pl[i] = w.c[i];
      pl[i + 3] = F.mul(lambda, w.c[i]);
    }
    out.push_back(klein_preimage(make_pluecker(std::move(pl), F), F));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ProjPoint point_by_index(u64 idx, const Fp& F) {
  u64 p = F.p();
  // blocks by leading position: lead 3 first (1 point), then 2 (p), 1 (p^2), 0 (p^3)
  u64 block = 1;
  int lead = 3;
  u64 remaining = idx;
  while (remaining >= block && lead >= 0) {
    remaining -= block;
    --lead;
    block *= p;
  }
  if (lead < 0) fail(Err::InvalidConfig, "point index out of range");
  Fvec v(4, 0);
  v[lead] = 1;
  for (int j = 3; j > lead; --j) {
    v[j] = remaining % p;
    remaining /= p;
  }
  return ProjPoint{std::move(v)};
}

namespace {

// streaming prefix of a seeded Fisher-Yates shuffle of 0..total-1: draws are
// distinct without materializing the enumeration
struct IndexSampler {
  u64 total;
  Rng& rng;
  u64 i = 0;
  std::map<u64, u64> displaced;

  u64 next() {
    if (i >= total) fail(Err::InsufficientSpace, "enumeration exhausted");
    u64 j = i + rng.below(total - i);
    auto at = [&](u64 k) {
      auto it = displaced.find(k);
      return it == displaced.end() ? k : it->second;
    };
    u64 vi = at(i), vj = at(j);
    displaced[j] = vi;
    ++i;
    return vj;
  }
};

}  // namespace

Arrangement random_arrangement(u64 m, u64 n, const Fp& F, u64 seed, ArrangementMode mode,
                               u64 k_target) {
  u64 total = count_points(3, F);
  if (m > total || n > total) fail(Err::InsufficientSpace, "not enough points or planes in P^3");
  Arrangement arr;
  arr.p = F.p();
  Rng rng(seed);

  std::set<Fvec> used_planes;
  if (mode == ArrangementMode::Clustered) {
    if (k_target > F.p() + 1)
      fail(Err::InsufficientSpace, "a pencil holds only p+1 planes");
    if (k_target > n) fail(Err::InvalidConfig, "k_target exceeds the plane count");
    // common line through two random distinct points
    ProjPoint a = point_by_index(rng.below(total), F);
    ProjPoint b = a;
    while (b == a) b = point_by_index(rng.below(total), F);
    LineP3 axis = line_from_points(a, b, F);
    // the pencil of planes through the axis: covectors killing both rows
    Fmat duals = nullspace(axis.b, F);
    std::vector<Hyperplane> pencil_planes;
    pencil_planes.push_back(make_hyperplane(duals[1], F));
    for (u64 t = 0; t < F.p(); ++t) {
      Fvec v(4);
      for (int i = 0; i < 4; ++i) v[i] = F.add(duals[0][i], F.mul(t, duals[1][i]));
      pencil_planes.push_back(make_hyperplane(std::move(v), F));
    }
    for (u64 i = 0; i < k_target; ++i) {
      arr.planes.push_back(pencil_planes[i]);
      used_planes.insert(pencil_planes[i].c);
    }
  }
  IndexSampler plane_sampler{total, rng, 0, {}};
  while (arr.planes.size() < n) {
    Hyperplane pi{point_by_index(plane_sampler.next(), F).c};
    if (used_planes.insert(pi.c).second) arr.planes.push_back(std::move(pi));
  }
  IndexSampler point_sampler{total, rng, 0, {}};
  while (arr.points.size() < m) arr.points.push_back(point_by_index(point_sampler.next(), F));
  return arr;
}

}  // namespace kil
