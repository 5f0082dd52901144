#pragma once

#include "hyperred/ball.hpp"
#include "hyperred/matrix.hpp"
#include "hyperred/poly.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace hyperred {

// Dense matrix of real balls, row-major.
struct BMat {
    int rows = 0, cols = 0;
    std::vector<Ball> a;

    BMat() = default;
    BMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, Ball(0)) {}

    Ball& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
    const Ball& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

    static BMat identity(int n);
    static BMat from(const QMat& m);
    static BMat from(const ZMat& m);
    static BMat from_doubles(int r, int c, const std::vector<double>& v);
    BMat transpose() const;
    std::vector<double> mids() const;
};

BMat operator*(const BMat& x, const BMat& y);
BMat operator-(const BMat& x, const BMat& y);
Ball det(const BMat& m);
// Throws PrecisionExhausted when a pivot cannot be separated from zero.
BMat inverse(const BMat& m);
// Certified positive definiteness by interval Cholesky.
bool certainly_positive_definite(const BMat& m);
// Upper bound for max |entry|.
double max_abs(const BMat& m);
// x^T M y for integer x, y
Ball quad(const BMat& M, const ZVec& x, const ZVec& y);
// Exact rational value of the midpoint.
Rat mid_rat(const Ball& b);

// Inner product H_T on W, compatible with the form G (Gram in the same basis),
// for which T commutes with its H-adjoint.
struct CovariantGram {
    BMat H;
    long prec = 0;
    double compat_residual = 0;  // max |A^T H A - H| / max |H|, A = G^{-1} H
    double commute_residual = 0; // max |T T' - T' T| / max |T|^2, T' = H^{-1} T^t H
};

// G defaults to J. prec <= 0 uses the working precision; escalates up to kMaxPrec.
// Throws RepeatedRoot, PrecisionExhausted.
CovariantGram reduction_covariant(const QMat& T, const std::optional<QMat>& G = std::nullopt, long prec = 0);

// sum_i |U(w_i)| / |f'(w_i)| over the roots of f.
Ball covariant_norm_of_U(const IntPoly& f, const RatPoly& U);

// Gram B^t H B of the lattice with basis columns B.
BMat lattice_gram(const QMat& basis, const BMat& H);

// Nonzero integer vectors x (one of each pair +-x) with x^T Q x <= bound2,
// up to a small relative slack. Throws PrecisionExhausted above `cap` vectors.
std::vector<ZVec> short_vectors(const BMat& Q, double bound2, size_t cap = 2000000);

struct ShortestVector {
    ZVec v; // coordinates in the lattice basis
    Ball length;
};
ShortestVector shortest_vector(const BMat& Q);
ShortestVector shortest_vector(const QMat& basis, const BMat& H);

// Lower convex hull of (i, y_i), i = 0..k; returns the indices of the corners.
std::vector<int> lower_hull_vertices(const std::vector<double>& y, double tol = 1e-9);

struct CanonicalPlot {
    int rank = 0;
    std::vector<Ball> log_covol; // minimal log covolume at each rank 0..rank
    std::vector<ZMat> minimizer; // saturated sublattice (coordinates) at each rank
    std::vector<int> vertices;   // ranks of the hull corners, from 0 to rank

    std::vector<std::pair<int, double>> points() const;
    std::vector<ZMat> filtration() const; // minimizers at the vertices
};

CanonicalPlot canonical_plot(const BMat& Q);
CanonicalPlot canonical_plot(const QMat& basis, const BMat& H);

// log covolume of the saturation of the span of the columns of S (integer coordinates).
Ball log_covolume(const ZMat& S, const BMat& Q);
// Same, without saturating.
Ball log_covolume_raw(const ZMat& S, const BMat& Q);

// lhs: log covol of span(1, ..., x^{m-1}) under H_{T_1}; rhs: the subset-sum formula.
std::pair<Ball, Ball> covolume_formula_check(const IntPoly& f, int m);

struct CuspCoordinates {
    std::vector<Ball> t;    // t_1, ..., t_g
    std::vector<Ball> ell;  // Gram-Schmidt lengths along e_1, e_2, ..., e_n (last coordinate first)
    BMat n;                 // unit upper-triangular in the reversed order
};
// Gram-Schmidt of H against the flag e_1 ⊂ (e_1, e_2) ⊂ ..., e_i = i-th coordinate from the end.
CuspCoordinates cusp_coordinates(const BMat& H);

constexpr double kSiegelConstant = 0.5;

struct SiegelReduction {
    ZMat gamma; // gamma^t J gamma = J
    BMat H;     // gamma^t H gamma
    CuspCoordinates cusp;
};
// Greedy reduction: shortest isotropic vectors of W(Z) under H build the flag.
SiegelReduction siegel_reduce(const BMat& H);

struct FlagProfile {
    std::vector<Rat> n; // n_1, ..., n_{2g+1}
    Int q_lower;
    QMat basis;         // b_i = f_i(x) / n_i as columns
};
// Throws NotStable, NotUnimodular.
FlagProfile flag_profile(const IntPoly& f, const QMat& Mprime);

} // namespace hyperred
