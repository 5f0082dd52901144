#pragma once

#include "hyperred/matrix.hpp"
#include "hyperred/poly.hpp"

#include <optional>
#include <utility>

namespace hyperred {

// Anti-diagonal Gram matrix of the standard split form on e_{-1},...,e_{-g},e_0,e_g,...,e_1.
QMat J_matrix(int n);

// G T == T^t G
bool is_self_adjoint(const QMat& T, const QMat& G);
// J-adjoint: flip along the anti-diagonal.
QMat j_adjoint(const QMat& T);

// Coefficient of x^{2g} of p mod f.
Rat tau(const IntPoly& f, const RatPoly& p);
// Gram of (v, w) = tau(v w / U mod f) on 1, x, ..., x^{2g}. Throws NotCoprime.
QMat tau_gram(const IntPoly& f, const RatPoly& U);
// Multiplication by x on 1, x, ..., x^{2g} (columns are images).
QMat mulx_matrix(const IntPoly& f);

// (positive, negative) inertia of a symmetric rational matrix.
std::pair<int, int> signature(const QMat& G);

// Integer P with P^t J P = gram and det P = +1; the columns of P^{-1} are the new
// basis in lattice coordinates. A known primitive isotropic vector may be supplied.
ZMat normalize_unimodular(const QMat& gram, const std::optional<ZVec>& isotropic_hint = std::nullopt);

// Columns of F (n x n, invertible) define F_i = span of the first i columns.
// Returns the integer basis b_{-1},...,b_{-g},b_0,b_g,...,b_1 (as columns, in lattice
// coordinates) with Gram J under `gram` and F_i spanned by the last i columns.
ZMat adapted_hyperbolic_basis(const QMat& gram, const QMat& F);
// Same, inside W(Z) with the form J.
ZMat adapted_hyperbolic_basis(const QMat& F);

// dim of { X : X T = T X }.
int centralizer_dimension(const QMat& T);

} // namespace hyperred
