#pragma once

#include "hyperred/poly.hpp"

#include <string>
#include <vector>

namespace hyperred {

struct MumfordTriple {
    RatPoly U, V, R;
    int m() const { return U.deg(); }
    friend bool operator==(const MumfordTriple& a, const MumfordTriple& b) {
        return a.U == b.U && a.V == b.V && a.R == b.R;
    }
};

struct JacobianPoint {
    IntPoly f;
    MumfordTriple t;
    bool is_identity() const { return t.U.deg() == 0; }
};

bool validate_triple(const IntPoly& f, const MumfordTriple& t);
// Throws InvalidTriple when validate_triple fails.
void require_triple(const IntPoly& f, const MumfordTriple& t);

MumfordTriple identity_triple(const IntPoly& f);
// (U, R) -> full triple, V = (f - R^2) / U.
MumfordTriple triple_from_UR(const IntPoly& f, const RatPoly& U, const RatPoly& R);
// Degree-one divisor (x0, y0) - P_inf.
MumfordTriple point_triple(const IntPoly& f, const Rat& x0, const Rat& y0);

JacobianPoint identity(const IntPoly& f);
JacobianPoint cantor_add(const JacobianPoint& P, const JacobianPoint& Q);
JacobianPoint negate(const JacobianPoint& P);
JacobianPoint multiply(const JacobianPoint& P, long n);

// H([1 : u_1 : ... : u_m]) as an integer (max of the primitive integral vector).
Int naive_height_int(const RatPoly& U);
double h_dagger(const JacobianPoint& P);
double h_dagger(const RatPoly& U);

struct DescentClass {
    RatPoly U0, U1;
    RatPoly rep;      // (-1)^{deg U} U1 (U0 - f/U0) mod f
    RatPoly integral; // primitive integral multiple of rep
};
DescentClass descent_class(const IntPoly& f, const MumfordTriple& t);

struct NormCheck {
    Rat norm;
    bool is_square;
};
// N(a mod f) = prod a(omega_i); throws NotCoprime.
NormCheck norm_square_check(const IntPoly& f, const RatPoly& a);
// Local square test in A_f: for the first `primes` good odd primes p, a(r) must be a
// square mod p at every root r of f mod p. Probabilistic: false means a is not a square.
bool probably_square_in_Af(const IntPoly& f, const RatPoly& a, int primes = 20);

// Rational affine points (x, y) with y >= 0. g = 1: x = a/b^2, max(|a|, b^2) <= B.
// g >= 2: x = a/b, max(|a|, b) <= B. Sorted by (height of x, x, y).
struct AffinePoint {
    Rat x, y;
};
std::vector<AffinePoint> search_points(const IntPoly& f, long B);
// Nonzero Jacobian points built from the affine points: degree-one divisors and,
// for g >= 2, pairwise sums. Deterministic order, duplicates removed.
std::vector<JacobianPoint> search_jacobian_points(const IntPoly& f, long B, size_t max_points = 64);

// "U | V | R"; V may be empty (then computed).
MumfordTriple parse_triple(const IntPoly& f, const std::string& s);
std::string format_triple(const MumfordTriple& t);

} // namespace hyperred
