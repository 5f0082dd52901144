#pragma once

#include "hyperred/arith.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hyperred {

class RatPoly {
public:
    std::vector<Rat> c; // c[i] multiplies x^i; no trailing zeros

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    RatPoly(std::initializer_list<long> coeffs);
    static RatPoly constant(const Rat& a);
    static RatPoly monomial(const Rat& a, int k);
    static RatPoly x() { return monomial(1, 1); }

    int deg() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    Rat lc() const { return c.empty() ? Rat(0) : c.back(); }
    Rat coeff(int k) const { return (k >= 0 && k < (int)c.size()) ? c[k] : Rat(0); }
    bool is_integral() const;
    Int denominator() const;

    Rat eval(const Rat& t) const;
    RatPoly derivative() const;
    RatPoly monic() const;
    void trim();

    RatPoly& operator+=(const RatPoly& o);
    RatPoly& operator-=(const RatPoly& o);
    RatPoly& operator*=(const Rat& a);
    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator-(RatPoly a) { return a *= Rat(-1); }
    friend RatPoly operator*(RatPoly a, const Rat& s) { return a *= s; }
    friend RatPoly operator*(const Rat& s, RatPoly a) { return a *= s; }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b);
    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c == b.c; }
    friend bool operator!=(const RatPoly& a, const RatPoly& b) { return !(a == b); }
};

// Quotient and remainder; b nonzero.
std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b);
RatPoly operator/(const RatPoly& a, const RatPoly& b);
RatPoly operator%(const RatPoly& a, const RatPoly& b);
// Exact division; throws InvalidInput if b does not divide a.
RatPoly exact_div(const RatPoly& a, const RatPoly& b);
RatPoly pow(const RatPoly& a, int e);

// Monic gcd (zero if both zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);
struct XGcd {
    RatPoly g, s, t; // s a + t b = g, g monic
};
XGcd xgcd(const RatPoly& a, const RatPoly& b);
// Inverse of a modulo m; throws NotCoprime.
RatPoly invmod(const RatPoly& a, const RatPoly& m);

struct IntPoly {
    std::vector<Int> c; // c[i] multiplies x^i

    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }
    // x^{2g+1} + c_2 x^{2g-1} + ... + c_{2g+1}
    static IntPoly family(const std::vector<Int>& cs);

    int deg() const { return (int)c.size() - 1; }
    int genus() const { return deg() / 2; }
    bool is_family() const;
    // c_i = coefficient of x^{deg-i}, 1 <= i <= deg
    Int ci(int i) const { return c[deg() - i]; }
    std::vector<Int> family_coeffs() const;
    RatPoly to_rat() const;
    void trim();
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c == b.c; }
};

// (primitive-free) cleared form: a = num / den with gcd(content(num), den) = 1, den > 0.
std::pair<IntPoly, Int> clear_denominators(const RatPoly& a);
Int content(const IntPoly& a);

// Standard resultant lc(a)^{deg b} prod_{a(α)=0} b(α), via subresultants.
Rat resultant_std(const RatPoly& a, const RatPoly& b);
// prod over roots β of b of a(β), times lc(b)^{deg a}; equals resultant_std(b, a).
Rat resultant(const RatPoly& a, const RatPoly& b);
// (-1)^{n(n-1)/2} Res(f, f') for monic f of degree n.
Int discriminant(const IntPoly& f);
Rat discriminant(const RatPoly& f);
// Fast exact test Δ(f) != 0 for monic integral f (modular first, exact fallback).
bool has_nonzero_discriminant(const IntPoly& f);

// Ht(f) < X for X = p/q, exactly: |c_i| q^i < p^i for all i.
bool height_less_than(const IntPoly& f, const Rat& X);

struct NewtonPolygon {
    Int p;
    std::vector<std::pair<long, long>> vertices; // (index, valuation)
    std::vector<Rat> slopes() const;
    // valuations of the roots, one per unit of horizontal length, increasing
    std::vector<Rat> root_valuations() const;
};
NewtonPolygon newton_polygon(const RatPoly& h, const Int& p);

struct HenselSplit {
    RatPoly plus;  // monic, p-integral, roots of valuation >= 0
    RatPoly minus; // monic, roots of negative valuation
    long prec;
    bool exact; // plus * minus == h exactly over Q
};
// prec <= 0 selects the default.
HenselSplit hensel_split(const RatPoly& h, const Int& p, long prec = 0, long max_prec = 4096);

// Text formats. Family: "c2,c3,...". General: descending coefficients "1,-3" or an
// expression "x^2+3*x+9" / "x - 129/100".
IntPoly parse_family(const std::string& s, int g = -1);
RatPoly parse_poly(const std::string& s);
// Either form above; an expression must be monic, integral, of odd degree >= 3 with no x^{n-1} term.
IntPoly parse_curve(const std::string& s);
std::string format_family(const IntPoly& f);
std::string format_coeffs(const RatPoly& a);
std::string to_expr(const RatPoly& a);

} // namespace hyperred
