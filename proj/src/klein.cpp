#include "kil/klein.hpp"

#include <algorithm>

namespace kil {

namespace {

constexpr int kIdx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {2, 3}, {3, 1}, {1, 2}};

Fvec pluecker_of_pair(const Fvec& q, const Fvec& u, const Fp& F) {
  Fvec P(6);
  for (int k = 0; k < 6; ++k) {
    int i = kIdx[k][0], j = kIdx[k][1];
    P[k] = F.sub(F.mul(q[i], u[j]), F.mul(q[j], u[i]));
  }
  return P;
}

}  // namespace

Pluecker make_pluecker(Fvec raw, const Fp& F) {
  if (raw.size() != 6) fail(Err::DimensionMismatch, "Plücker vectors have six coordinates");
  return Pluecker{proj_normalize(std::move(raw), F)};
}

u64 klein_form(const Pluecker& L, const Fp& F) {
  const Fvec& c = L.c;
  return F.add(F.add(F.mul(c[0], c[3]), F.mul(c[1], c[4])), F.mul(c[2], c[5]));
}

bool on_klein(const Pluecker& L, const Fp& F) { return klein_form(L, F) == 0; }

Pluecker klein_map(const LineP3& l, const Fp& F) {
  return Pluecker{proj_normalize(pluecker_of_pair(l.b[0], l.b[1], F), F)};
}

LineP3 klein_preimage(const Pluecker& L, const Fp& F) {
  if (!on_klein(L, F)) fail(Err::NotOnKleinQuadric, "vector violates the Klein relation");
  // skew matrix with entries A[i][j] = P_ij; its column space is the line
  const Fvec& c = L.c;
  Fmat A(4, Fvec(4, 0));
  for (int k = 0; k < 6; ++k) {
    int i = kIdx[k][0], j = kIdx[k][1];
    A[i][j] = c[k];
    A[j][i] = F.neg(c[k]);
  }
  Fmat cols;
  for (int j = 0; j < 4; ++j) {
    Fvec col(4);
    for (int i = 0; i < 4; ++i) col[i] = A[i][j];
    if (!is_zero_vec(col)) cols.push_back(std::move(col));
  }
  return line_from_matrix(std::move(cols), F);
}

u64 reciprocal_product(const Pluecker& L, const Pluecker& M, const Fp& F) {
  u64 s = 0;
  for (int k = 0; k < 3; ++k) {
    s = F.add(s, F.mul(L.c[k], M.c[k + 3]));
    s = F.add(s, F.mul(M.c[k], L.c[k + 3]));
  }
  return s;
}

bool lines_meet(const Pluecker& L, const Pluecker& M, const Fp& F) {
  return reciprocal_product(L, M, F) == 0;
}

AlphaPlane alpha_plane(const ProjPoint& q, const Fp& F) {
  // span the images of three independent lines through q
  size_t lead = 0;
  while (q.c[lead] == 0) ++lead;
  Fmat gens;
  for (size_t j = 0; j < 4; ++j) {
    if (j == lead) continue;
    Fvec e(4, 0);
    e[j] = 1;
    gens.push_back(pluecker_of_pair(q.c, e, F));
  }
  Fmat span = rref(std::move(gens), F);
  if (span.size() != 3) fail(Err::InvalidConfig, "alpha span degenerated");
  return AlphaPlane{q, std::move(span)};
}

BetaPlane beta_plane(const Hyperplane& pi, const Fp& F) {
  Fmat pts = nullspace(Fmat{pi.c}, F);  // three points spanning the plane
  Fmat gens;
  gens.push_back(pluecker_of_pair(pts[0], pts[1], F));
  gens.push_back(pluecker_of_pair(pts[0], pts[2], F));
  gens.push_back(pluecker_of_pair(pts[1], pts[2], F));
  Fmat span = rref(std::move(gens), F);
  if (span.size() != 3) fail(Err::InvalidConfig, "beta span degenerated");
  return BetaPlane{pi, std::move(span)};
}

std::vector<Pluecker> span_points(const Fmat& span, const Fp& F) {
  std::vector<Pluecker> out;
  u64 p = F.p();
  out.reserve(p * p + p + 1);
  // projective parameters (a:b:c), canonical reps
  auto emit = [&](u64 a, u64 b, u64 c) {
    Fvec v(6, 0);
    for (int j = 0; j < 6; ++j) {
      u64 s = F.mul(a, span[0][j]);
      s = F.add(s, F.mul(b, span[1][j]));
      s = F.add(s, F.mul(c, span[2][j]));
      v[j] = s;
    }
    out.push_back(Pluecker{proj_normalize(std::move(v), F)});
  };
  emit(0, 0, 1);
  for (u64 c = 0; c < p; ++c) emit(0, 1, c);
  for (u64 b = 0; b < p; ++b)
    for (u64 c = 0; c < p; ++c) emit(1, b, c);
  return out;
}

std::vector<Pluecker> carrier_points(const Fmat& carrier, const Fp& F) {
  std::vector<Pluecker> out;
  out.reserve(F.p() + 1);
  out.push_back(Pluecker{proj_normalize(carrier[1], F)});
  for (u64 t = 0; t < F.p(); ++t) {
    Fvec v(carrier[0].size());
    for (size_t j = 0; j < v.size(); ++j) v[j] = F.add(carrier[0][j], F.mul(t, carrier[1][j]));
    out.push_back(Pluecker{proj_normalize(std::move(v), F)});
  }
  return out;
}

std::optional<Fmat> pencil(const ProjPoint& q, const Hyperplane& pi, const Fp& F) {
  if (!incident(q, pi, F)) return std::nullopt;
  Fmat carrier = rowspace_intersection(alpha_plane(q, F).span, beta_plane(pi, F).span, F);
  if (carrier.size() != 2) fail(Err::InvalidConfig, "pencil carrier is not a line");
  return carrier;
}

namespace {

// covector of the tangent hyperplane T_L K: the reciprocal pairing with L
Fvec tangent_covector(const Pluecker& L) {
  Fvec u(6);
  for (int k = 0; k < 3; ++k) {
    u[k] = L.c[k + 3];
    u[k + 3] = L.c[k];
  }
  return u;
}

}  // namespace

Regulus regulus_through(const LineP3& l1, const LineP3& l2, const LineP3& l3, const Fp& F) {
  const LineP3* ls[3] = {&l1, &l2, &l3};
  std::array<Pluecker, 3> imgs = {klein_map(l1, F), klein_map(l2, F), klein_map(l3, F)};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (line_line_relation(*ls[i], *ls[j], F).rel != LineRelation::Skew)
        fail(Err::NotMutuallySkew, "defining lines must be pairwise skew");

  Fmat conditions;
  for (const auto& L : imgs) conditions.push_back(tangent_covector(L));
  Fmat span = nullspace(conditions, F);
  if (span.size() != 3)
    fail(Err::DegenerateConic, "tangency conditions do not cut a 2-plane");

  // restrict the Klein form to the 2-plane: q(a,b,c) with symmetric matrix M
  auto B = [&](const Fvec& x, const Fvec& y) {
    u64 s = 0;
    for (int k = 0; k < 3; ++k) {
      s = F.add(s, F.mul(x[k], y[k + 3]));
      s = F.add(s, F.mul(y[k], x[k + 3]));
    }
    return s;
  };
  Fmat M(3, Fvec(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M[i][j] = F.half(B(span[i], span[j]));
  if (rank(M, F) != 3) {
    // classify the split and report rational linear factors when they exist
    std::vector<Fvec> sols;
    auto q_of = [&](u64 a, u64 b, u64 c) {
      Fvec x{a, b, c};
      u64 s = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s = F.add(s, F.mul(x[i], F.mul(M[i][j], x[j])));
      return s;
    };
    auto consider = [&](u64 a, u64 b, u64 c) {
      if (q_of(a, b, c) == 0) sols.push_back(Fvec{a, b, c});
    };
    consider(0, 0, 1);
    for (u64 c = 0; c < F.p(); ++c) consider(0, 1, c);
    for (u64 b = 0; b < F.p(); ++b)
      for (u64 c = 0; c < F.p(); ++c) consider(1, b, c);
    std::string detail = "conic on the 2-plane is degenerate; rational solutions: " +
                         std::to_string(sols.size());
    if (sols.size() == 2 * F.p() + 1) {
      detail += " (splits into two rational pencil lines)";
    } else if (sols.size() == F.p() + 1) {
      detail += " (a double line, one pencil)";
    } else if (sols.size() <= 1) {
      detail += " (factors are conjugate over the quadratic extension)";
    }
    fail(Err::DegenerateConic, detail);
  }

  Regulus r;
  r.defining = {l1, l2, l3};
  r.span = span;
  for (const Pluecker& L : span_points(span, F))
    if (on_klein(L, F)) r.members.push_back(L);
  std::sort(r.members.begin(), r.members.end());
  return r;
}

Regulus reciprocal_regulus(const Regulus& r, const Fp& F) {
  if (r.members.size() < 3) fail(Err::DegenerateConic, "regulus has fewer than three members");
  LineP3 a = klein_preimage(r.members[0], F);
  LineP3 b = klein_preimage(r.members[1], F);
  LineP3 c = klein_preimage(r.members[2], F);
  return regulus_through(a, b, c, F);
}

}  // namespace kil
