#pragma once

#include <vector>

#include "kil/ffield.hpp"

namespace kil {

using Fvec = std::vector<u64>;
using Fmat = std::vector<Fvec>;

u64 dot(const Fvec& a, const Fvec& b, const Fp& F);

bool is_zero_vec(const Fvec& v);

// scale so the first nonzero coordinate is 1; rejects the zero vector
Fvec proj_normalize(Fvec v, const Fp& F);

// Reduced row echelon form with zero rows dropped: the unique canonical
// basis of the row space. Pivoting is first nonzero column, top row.
Fmat rref(Fmat m, const Fp& F);

int rank(Fmat m, const Fp& F);

// canonical (rref) basis of the right kernel {x : m x = 0}
Fmat nullspace(const Fmat& m, const Fp& F);

// canonical basis of rowspace(a) ∩ rowspace(b)
Fmat rowspace_intersection(const Fmat& a, const Fmat& b, const Fp& F);

// membership test against an rref basis
bool in_rowspace(const Fvec& v, const Fmat& rref_basis, const Fp& F);

Fmat stack_rows(const Fmat& a, const Fmat& b);

}  // namespace kil
