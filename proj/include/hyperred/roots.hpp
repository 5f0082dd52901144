#pragma once

#include "hyperred/ball.hpp"
#include "hyperred/poly.hpp"

#include <vector>

namespace hyperred {

struct RootDisk {
    Real re, im;
    Real radius; // rounded up
    CBall ball() const; // square enclosure of the disk
};

struct CertifiedRoots {
    std::vector<RootDisk> roots;
    std::vector<int> conj;   // conj[i] = index of the conjugate root
    std::vector<bool> real;  // realness flags
    long prec = 0;           // bits used for the final certification
    double max_radius() const;
};

// Inclusion disks for all roots; disjoint, each containing exactly one root.
// target_radius <= 0 selects 2^-64 (1 + Ht1 estimate).
CertifiedRoots complex_roots(const IntPoly& f, double target_radius = 0);
CertifiedRoots complex_roots(const RatPoly& f, double target_radius = 0);

// max |ω_i| with two-sided bounds; tolerates repeated roots.
Ball ht1(const IntPoly& f);
// Ht(f) = max |c_i|^{1/i}.
Ball height(const IntPoly& f);
Ball height(const RatPoly& f);

// Enclosure of min_{i<j} |ω_i - ω_j|.
Ball min_root_gap(const IntPoly& f);
Ball min_root_gap(const CertifiedRoots& r);

// Horner evaluation with ball arithmetic.
CBall eval(const RatPoly& p, const CBall& z);
CBall eval(const IntPoly& p, const CBall& z);

} // namespace hyperred
