#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hyperred {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& n, const Int& d) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

Int ipow(const Int& b, unsigned long e);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);

// v_p(n); n must be nonzero.
long valuation(const Int& n, const Int& p);
long valuation(const Rat& q, const Int& p);
// Large sentinel for v_p(0).
constexpr long kInfVal = 1L << 40;

bool is_square(const Int& n);
bool is_square(const Rat& q);

// Accepts "12", "-3/4", "2.5"; throws Error(InvalidInput) otherwise.
Rat parse_rat(const std::string& s);
std::string to_string(const Rat& q);
std::string to_string(const Int& n);

// Prime factorisation of |n| (n != 0) by trial division and Pollard rho.
std::vector<std::pair<Int, int>> factor(const Int& n);
std::vector<Int> prime_divisors(const Int& n);

// Balanced residue of a mod m in (-m/2, m/2].
Int smod(const Int& a, const Int& m);
// Inverse of a mod m; m > 1, gcd(a, m) = 1.
Int invmod(const Int& a, const Int& m);

double log_abs(const Int& n);

} // namespace hyperred
