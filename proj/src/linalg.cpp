#include "kil/linalg.hpp"

#include <algorithm>

namespace kil {

u64 dot(const Fvec& a, const Fvec& b, const Fp& F) {
  if (a.size() != b.size()) fail(Err::DimensionMismatch, "dot of unequal lengths");
  u64 s = 0;
  for (size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

bool is_zero_vec(const Fvec& v) {
  return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

Fvec proj_normalize(Fvec v, const Fp& F) {
  for (u64 x : v) {
    if (x != 0) {
      if (x != 1) {
        u64 s = F.inv(x);
        for (u64& y : v) y = F.mul(y, s);
      }
      return v;
    }
  }
  fail(Err::InvalidConfig, "zero vector has no projective class");
}

Fmat rref(Fmat m, const Fp& F) {
  if (m.empty()) return m;
  size_t cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < m.size(); ++col) {
    size_t pivot = row;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[row], m[pivot]);
    u64 s = F.inv(m[row][col]);
    for (size_t j = col; j < cols; ++j) m[row][j] = F.mul(m[row][j], s);
    for (size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col] == 0) continue;
      u64 f = m[i][col];
      for (size_t j = col; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[row][j]));
    }
    ++row;
  }
  m.resize(row);
  return m;
}

int rank(Fmat m, const Fp& F) { return static_cast<int>(rref(std::move(m), F).size()); }

Fmat nullspace(const Fmat& m, const Fp& F) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  Fmat r = rref(m, F);
  std::vector<size_t> pivot_col(r.size());
  std::vector<bool> is_pivot(cols, false);
  for (size_t i = 0; i < r.size(); ++i) {
    size_t c = 0;
    while (c < cols && r[i][c] == 0) ++c;
    pivot_col[i] = c;
    is_pivot[c] = true;
  }
  Fmat basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Fvec v(cols, 0);
    v[free] = 1;
    for (size_t i = 0; i < r.size(); ++i) v[pivot_col[i]] = F.neg(r[i][free]);
    basis.push_back(std::move(v));
  }
  return rref(std::move(basis), F);
}

Fmat rowspace_intersection(const Fmat& a, const Fmat& b, const Fp& F) {
  // duals: x in both row spaces iff x kills both nullspaces
  Fmat da = nullspace(a, F);
  Fmat db = nullspace(b, F);
  return nullspace(stack_rows(da, db), F);
}

bool in_rowspace(const Fvec& v, const Fmat& rref_basis, const Fp& F) {
  Fvec r = v;
  size_t cols = r.size();
  for (const Fvec& row : rref_basis) {
    size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    if (c < cols && r[c] != 0) {
      u64 f = r[c];
      for (size_t j = c; j < cols; ++j) r[j] = F.sub(r[j], F.mul(f, row[j]));
    }
  }
  return is_zero_vec(r);
}

Fmat stack_rows(const Fmat& a, const Fmat& b) {
  Fmat m = a;
  m.insert(m.end(), b.begin(), b.end());
  return m;
}

}  // namespace kil
