#pragma once

#include "hyperred/matrix.hpp"
#include "hyperred/mumford.hpp"

#include <array>
#include <optional>

namespace hyperred {

// W_D = I_D / y I_D with I_D = (U, y - R). A vector (a, b), deg a < v, deg b < u,
// stands for aU + b(y - R); coordinates are the coefficients of a, then of b.
struct DivisorSpace {
    IntPoly f;
    MumfordTriple t;
    int u = 0, v = 0;
    QMat gram;                   // basis U, xU, ..., x^{v-1}U, (y-R), ..., x^{u-1}(y-R)
    QMat mulx;                   // columns are images of the basis
    std::array<RatPoly, 4> muly; // [[R, V], [U, -R]] row-major
    QMat isotropic;              // n x g, spans L_D

    int dim() const { return u + v; }
    // Normal-form coordinates of aU + b(y - R) for arbitrary a, b.
    QVec coords(const RatPoly& a, const RatPoly& b) const;
    Rat pairing(const RatPoly& a1, const RatPoly& b1, const RatPoly& a2, const RatPoly& b2) const;
};

// Throws InvalidTriple.
DivisorSpace divisor_space(const IntPoly& f, const MumfordTriple& t);

// Basis (columns, W_D coordinates) of a T_D-stable lattice at p, unimodular at p and
// containing p^r U as a p-primitive vector. The result is exact only up to p-adic
// precision `prec`; throws InsufficientPrecision when the splits do not lift.
QMat local_lattice(const DivisorSpace& space, const Int& p, long prec);

struct GlobalLattice {
    DivisorSpace space;
    QMat basis;   // columns in W_D coordinates
    ZVec marked;  // coordinates of N U in `basis`
    Int N, M;     // M U integral with M minimal, M = N^2
    ZMat gram;    // restricted Gram, det +-1
    ZMat mulx;    // T_D in `basis`
    std::vector<Int> primes;
    long prec = 0;
};

GlobalLattice global_lattice(const IntPoly& f, const MumfordTriple& t);

struct OrbitRep {
    ZMat T;  // J-self-adjoint, char poly f
    ZVec w;  // image of N U, primitive
    ZMat P;  // lattice coordinates -> standard coordinates
    GlobalLattice lattice;
};
OrbitRep integral_orbit_rep(const IntPoly& f, const MumfordTriple& t);

struct OrbitReport {
    bool integral = false, self_adjoint = false, trace_zero = false, charpoly = false;
    bool ok() const { return integral && self_adjoint && trace_zero && charpoly; }
};
OrbitReport verify_orbit(const QMat& T, const IntPoly& f);

// L (n x g, rank g) isotropic for J with T L inside L^perp.
bool is_distinguished_witness(const QMat& T, const QMat& L);
// The image of L_D under the standardisation, as a candidate witness.
QMat transported_isotropic(const OrbitRep& rep);
// Transported candidate first, then isotropic subspaces spanned by vectors with
// entries bounded by `bound`. nullopt means "not found at this bound".
std::optional<QMat> find_distinguished_subspace(const QMat& T, const std::optional<QMat>& candidate, long bound = 2);

} // namespace hyperred
