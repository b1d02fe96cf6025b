#include "kil/incidence.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

namespace kil {

void validate(const Arrangement& arr, const Fp& F) {
  if (arr.p != F.p()) fail(Err::InvalidConfig, "arrangement modulus differs from the field");
  std::set<Fvec> seen;
  for (const ProjPoint& q : arr.points) {
    if (q.c.size() != 4) fail(Err::DimensionMismatch, "points live in P^3");
    if (!seen.insert(q.c).second) fail(Err::InvalidConfig, "duplicate point");
  }
  seen.clear();
  for (const Hyperplane& pi : arr.planes) {
    if (pi.c.size() != 4) fail(Err::DimensionMismatch, "planes live in P^3");
    if (!seen.insert(pi.c).second) fail(Err::InvalidConfig, "duplicate plane");
  }
  if (!arr.point_weights.empty() && arr.point_weights.size() != arr.points.size())
    fail(Err::InvalidConfig, "point weight vector length mismatch");
  if (!arr.plane_weights.empty() && arr.plane_weights.size() != arr.planes.size())
    fail(Err::InvalidConfig, "plane weight vector length mismatch");
  for (u64 w : arr.point_weights)
    if (w == 0) fail(Err::InvalidConfig, "weights must be positive");
  for (u64 w : arr.plane_weights)
    if (w == 0) fail(Err::InvalidConfig, "weights must be positive");
}

namespace {

// shard the point range; aggregation is plain integer addition so the total
// is independent of the shard count
template <typename Fn>
u64 sharded_sum(size_t items, int threads, Fn&& per_item) {
  if (threads < 1) threads = 1;
  if (threads == 1 || items < 2) {
    u64 s = 0;
    for (size_t i = 0; i < items; ++i) s += per_item(i);
    return s;
  }
  std::vector<u64> partial(threads, 0);
  std::vector<std::thread> pool;
  size_t chunk = (items + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    size_t lo = t * chunk, hi = std::min(items, lo + chunk);
    pool.emplace_back([&, lo, hi, t] {
      u64 s = 0;
      for (size_t i = lo; i < hi; ++i) s += per_item(i);
      partial[t] = s;
    });
  }
  for (auto& th : pool) th.join();
  u64 s = 0;
  for (u64 x : partial) s += x;
  return s;
}

u64 collinearity_or_one(const std::vector<ProjPoint>& pts, const Fp& F) {
  return pts.size() < 2 ? (pts.empty() ? 0 : 1) : max_collinear(pts, F).k;
}

u64 collinearity_or_one(const std::vector<Hyperplane>& pls, const Fp& F) {
  return pls.size() < 2 ? (pls.empty() ? 0 : 1) : max_collinear(pls, F).k;
}

}  // namespace

IncidenceReport count_incidences(const Arrangement& arr, const Fp& F, int threads) {
  validate(arr, F);
  IncidenceReport rep;
  rep.m = arr.points.size();
  rep.n = arr.planes.size();
  rep.incidences = sharded_sum(arr.points.size(), threads, [&](size_t i) {
    const Fvec& q = arr.points[i].c;
    u64 local = 0;
    for (const Hyperplane& pi : arr.planes)
      if (dot(q, pi.c, F) == 0) ++local;
    return local;
  });
  rep.k_points = collinearity_or_one(arr.points, F);
  rep.k_planes = collinearity_or_one(arr.planes, F);
  return rep;
}

u64 count_incidences_bruteforce(const Arrangement& arr, const Fp& F) {
  u64 total = 0;
  for (const Hyperplane& pi : arr.planes)
    for (const ProjPoint& q : arr.points)
      if (incident(q, pi, F)) ++total;
  return total;
}

namespace {

bool pair_on_forbidden_line(const ProjPoint& q, const Hyperplane& pi, const ForbiddenLines& forb,
                            const Fp& F) {
  for (const LineP3& l : forb.lines) {
    if (!in_rowspace(q.c, l.b, F)) continue;
    bool inside = true;
    for (const Fvec& row : l.b)
      if (dot(row, pi.c, F) != 0) inside = false;
    if (inside) return true;
  }
  return false;
}

}  // namespace

IncidenceReport count_restricted(const Arrangement& arr, const ForbiddenLines& forb, const Fp& F) {
  validate(arr, F);
  IncidenceReport rep;
  rep.m = arr.points.size();
  rep.n = arr.planes.size();
  for (const ProjPoint& q : arr.points)
    for (const Hyperplane& pi : arr.planes)
      if (incident(q, pi, F) && !pair_on_forbidden_line(q, pi, forb, F)) ++rep.incidences;
  rep.k_points = collinearity_or_one(arr.points, F);
  rep.k_planes = collinearity_or_one(arr.planes, F);

  // k*: richest line outside the forbidden set
  std::set<Fmat> forbidden;
  for (const LineP3& l : forb.lines) forbidden.insert(l.b);
  u64 k_star = arr.planes.empty() ? 0 : 1;
  std::map<LineP3, u64> pair_hits;
  for (size_t i = 0; i < arr.planes.size(); ++i)
    for (size_t j = i + 1; j < arr.planes.size(); ++j)
      ++pair_hits[plane_intersection_line(arr.planes[i], arr.planes[j], F)];
  for (const auto& [line, pairs] : pair_hits) {
    if (forbidden.count(line.b)) continue;
    u64 disc = 1 + 8 * pairs;
    u64 r = ceil_sqrt(disc);
    while (r * r > disc) --r;
    u64 t = (1 + r) / 2;
    k_star = std::max(k_star, t);
  }
  rep.k_star = k_star;
  return rep;
}

u64 count_weighted(const Arrangement& arr, const Fp& F, int threads) {
  validate(arr, F);
  if (!arr.weighted()) return count_incidences(arr, F, threads).incidences;
  auto wq = [&](size_t i) { return arr.point_weights.empty() ? 1 : arr.point_weights[i]; };
  auto wp = [&](size_t j) { return arr.plane_weights.empty() ? 1 : arr.plane_weights[j]; };
  return sharded_sum(arr.points.size(), threads, [&](size_t i) {
    u64 local = 0;
    for (size_t j = 0; j < arr.planes.size(); ++j)
      if (dot(arr.points[i].c, arr.planes[j].c, F) == 0) local += wq(i) * wp(j);
    return local;
  });
}

u64 count_weighted_bruteforce(const Arrangement& arr, const Fp& F) {
  u64 total = 0;
  for (size_t j = 0; j < arr.planes.size(); ++j)
    for (size_t i = 0; i < arr.points.size(); ++i)
      if (incident(arr.points[i], arr.planes[j], F)) {
        u64 wq = arr.point_weights.empty() ? 1 : arr.point_weights[i];
        u64 wp = arr.plane_weights.empty() ? 1 : arr.plane_weights[j];
        total += wq * wp;
      }
  return total;
}

BoundVerdict bound_check(const IncidenceReport& rep, const Fp& F, bool allow_swap) {
  BoundVerdict v;
  v.m = rep.m;
  v.n = rep.n;
  u64 k = rep.k_star.value_or(rep.k_planes);
  if (v.m < v.n) {
    if (!allow_swap) fail(Err::OrientationError, "m < n and duality swap forbidden");
    std::swap(v.m, v.n);
    v.swapped = true;
    k = rep.k_star.value_or(rep.k_points);
  }
  v.k = k;
  v.n_le_p2 = v.n <= F.p() * F.p();
  v.bound_value = v.m * ceil_sqrt(v.n) + v.k * v.m;
  v.ratio = Ratio{rep.incidences, v.bound_value};
  return v;
}

// ---------------------------------------------------------------------------
// vanishing polynomial

u64 monomial_count(u64 degree) { return (degree + 1) * (degree + 2) * (degree + 3) / 6; }

namespace {

// exponent tuples in descending lexicographic order: x0^d first
std::vector<std::array<u64, 4>> monomials_of_degree(u64 d) {
  std::vector<std::array<u64, 4>> out;
  for (u64 e0 = d + 1; e0-- > 0;)
    for (u64 e1 = d - e0 + 1; e1-- > 0;)
      for (u64 e2 = d - e0 - e1 + 1; e2-- > 0;) out.push_back({e0, e1, e2, d - e0 - e1 - e2});
  return out;
}

u64 eval_monomial(const std::array<u64, 4>& e, const Fvec& x, const Fp& F) {
  u64 v = 1;
  for (int i = 0; i < 4; ++i) v = F.mul(v, F.pow(x[i], e[i]));
  return v;
}

}  // namespace

u64 eval_poly4(const Poly4& poly, const Fvec& x, const Fp& F) {
  auto mons = monomials_of_degree(poly.degree);
  u64 s = 0;
  for (size_t i = 0; i < mons.size(); ++i)
    s = F.add(s, F.mul(poly.coeffs[i], eval_monomial(mons[i], x, F)));
  return s;
}

Poly4 fit_vanishing_polynomial(const std::vector<LineP3>& lines, u64 d, const Fp& F) {
  if (d < 1) fail(Err::InvalidConfig, "degree must be at least 1");
  if (F.p() < d + 1)
    fail(Err::InvalidConfig, "need d+1 distinct rational points per line; field too small");
  auto mons = monomials_of_degree(d);
  Fmat rows;
  for (const LineP3& l : lines) {
    std::vector<ProjPoint> pts = line_points(l, F);
    for (u64 t = 0; t <= d; ++t) {
      Fvec row(mons.size());
      for (size_t j = 0; j < mons.size(); ++j) row[j] = eval_monomial(mons[j], pts[t].c, F);
      rows.push_back(std::move(row));
    }
  }
  Fmat kernel = rows.empty() ? Fmat{} : nullspace(rows, F);
  if (rows.empty()) {
    // no constraints at all: x0^d works
    Poly4 poly{d, Fvec(mons.size(), 0)};
    poly.coeffs[0] = 1;
    return poly;
  }
  if (kernel.empty()) fail(Err::NoKernel, "evaluation matrix has full column rank");
  Poly4 poly{d, proj_normalize(kernel[0], F)};
  // a degree-d form with d+1 distinct roots on a line vanishes on it; verify anyway
  for (const LineP3& l : lines)
    for (const ProjPoint& q : line_points(l, F))
      if (eval_poly4(poly, q.c, F) != 0)
        fail(Err::NoKernel, "kernel vector fails to vanish on a line");
  return poly;
}

}  // namespace kil
