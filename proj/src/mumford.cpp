#include "hyperred/mumford.hpp"

#include "hyperred/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hyperred {

bool validate_triple(const IntPoly& f, const MumfordTriple& t) {
    int g = f.genus(), m = t.U.deg();
    if (m < 0 || m > g || !t.U.is_monic()) return false;
    if (!t.V.is_monic() || t.V.deg() != f.deg() - m) return false;
    if (!t.R.is_zero() && t.R.deg() > m - 1) return false;
    return t.U * t.V == f.to_rat() - t.R * t.R;
}

void require_triple(const IntPoly& f, const MumfordTriple& t) {
    if (!validate_triple(f, t)) throw Error(ErrorKind::InvalidTriple, "not a Mumford triple for f");
}

MumfordTriple identity_triple(const IntPoly& f) { return {RatPoly{1}, f.to_rat(), RatPoly()}; }

MumfordTriple triple_from_UR(const IntPoly& f, const RatPoly& U, const RatPoly& R) {
    MumfordTriple t{U, exact_div(f.to_rat() - R * R, U), R};
    return t;
}

MumfordTriple point_triple(const IntPoly& f, const Rat& x0, const Rat& y0) {
    if (f.to_rat().eval(x0) != y0 * y0) throw Error(ErrorKind::InvalidInput, "point is not on the curve");
    return triple_from_UR(f, RatPoly(std::vector<Rat>{-x0, 1}), RatPoly::constant(y0));
}

JacobianPoint identity(const IntPoly& f) { return {f, identity_triple(f)}; }

JacobianPoint cantor_add(const JacobianPoint& P, const JacobianPoint& Q) {
    if (!(P.f == Q.f)) throw Error(ErrorKind::InvalidInput, "points on different curves");
    const IntPoly& f = P.f;
    RatPoly F = f.to_rat();
    int g = f.genus();
    const RatPoly &u1 = P.t.U, &u2 = Q.t.U, &v1 = P.t.R, &v2 = Q.t.R;
    XGcd a = xgcd(u1, u2); // e1 u1 + e2 u2 = d1
    XGcd b = xgcd(a.g, v1 + v2);
    RatPoly d = b.g;
    RatPoly s1 = b.s * a.s, s2 = b.s * a.t, s3 = b.t;
    RatPoly u = exact_div(u1 * u2, d * d);
    RatPoly v = exact_div(s1 * u1 * v2 + s2 * u2 * v1 + s3 * (v1 * v2 + F), d) % u;
    while (u.deg() > g) {
        RatPoly un = exact_div(F - v * v, u);
        RatPoly vn = (-v) % un;
        u = un.monic();
        v = vn % u;
    }
    u = u.monic();
    v = v % u;
    JacobianPoint r{f, triple_from_UR(f, u, v)};
    return r;
}

JacobianPoint negate(const JacobianPoint& P) { return {P.f, {P.t.U, P.t.V, -P.t.R}}; }

JacobianPoint multiply(const JacobianPoint& P, long n) {
    JacobianPoint base = n < 0 ? negate(P) : P;
    unsigned long k = n < 0 ? -(unsigned long)n : (unsigned long)n;
    JacobianPoint acc = identity(P.f);
    while (k) {
        if (k & 1) acc = cantor_add(acc, base);
        k >>= 1;
        if (k) base = cantor_add(base, base);
    }
    return acc;
}

Int naive_height_int(const RatPoly& U) {
    Int D = U.denominator();
    Int h = D;
    for (auto& c : U.c) {
        Int x = Rat(c * Rat(D)).get_num();
        if (abs(x) > h) h = abs(x);
    }
    // U monic: the leading entry is D, and gcd(D, D u_i) = 1
    return h;
}

double h_dagger(const RatPoly& U) {
    Int h = naive_height_int(U);
    return log_abs(h);
}

double h_dagger(const JacobianPoint& P) { return h_dagger(P.t.U); }

DescentClass descent_class(const IntPoly& f, const MumfordTriple& t) {
    RatPoly F = f.to_rat();
    DescentClass dc;
    dc.U0 = gcd(t.U, F);
    if (dc.U0.is_zero()) dc.U0 = RatPoly{1};
    dc.U1 = exact_div(t.U, dc.U0);
    if (gcd(dc.U1, F).deg() > 0) throw Error(ErrorKind::InvalidTriple, "U has a repeated factor in common with f");
    RatPoly rep = dc.U1 * (dc.U0 - exact_div(F, dc.U0));
    if (t.U.deg() % 2) rep = -rep;
    dc.rep = rep % F;
    auto [num, den] = clear_denominators(dc.rep);
    (void)den;
    std::vector<Rat> c;
    for (auto& x : num.c) c.emplace_back(x);
    RatPoly integral(c);
    Int ct = content(num);
    if (ct != 0) integral *= Rat(1) / Rat(ct);
    dc.integral = integral;
    return dc;
}

NormCheck norm_square_check(const IntPoly& f, const RatPoly& a) {
    RatPoly F = f.to_rat();
    if (gcd(a, F).deg() > 0 || a.is_zero()) throw Error(ErrorKind::NotCoprime, "a and f share a root");
    NormCheck r;
    r.norm = resultant(a, F);
    r.is_square = is_square(r.norm);
    return r;
}

bool probably_square_in_Af(const IntPoly& f, const RatPoly& a, int primes) {
    if (a.is_zero()) return true;
    Int disc = discriminant(f);
    auto [num, den] = clear_denominators(a);
    int used = 0;
    for (long p = 3; used < primes; p += 2) {
        if (!mpz_probab_prime_p(Int(p).get_mpz_t(), 25)) continue;
        if (disc % p == 0 || den % p == 0) continue;
        ++used;
        // den is a unit mod p, so a is a square iff num * den is (den^2 is a square)
        for (long r = 0; r < p; ++r) {
            Int fr = 0, ar = 0;
            for (int k = f.deg(); k >= 0; --k) fr = (fr * r + f.c[k]) % p;
            if (fr != 0) continue;
            for (int k = num.deg(); k >= 0; --k) ar = (ar * r + num.c[k]) % p;
            ar = (ar * den) % p;
            if (ar < 0) ar += p;
            if (ar == 0) continue;
            if (mpz_legendre(ar.get_mpz_t(), Int(p).get_mpz_t()) != 1) return false;
        }
    }
    return true;
}

namespace {

Int isqrt_if_square(const Int& n, bool& ok) {
    ok = false;
    if (n < 0) return 0;
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    ok = (r * r == n);
    return r;
}

Int xheight(const Rat& x) {
    Int a = abs(x.get_num());
    return a > x.get_den() ? a : Int(x.get_den());
}

} // namespace

std::vector<AffinePoint> search_points(const IntPoly& f, long B) {
    std::vector<AffinePoint> pts;
    int g = f.genus(), n = f.deg();
    if (g == 1) {
        Int c2 = f.ci(2), c3 = f.ci(3);
        for (long b = 1; b * b <= B; ++b) {
            Int b2 = Int(b) * b, b4 = b2 * b2, b6 = b4 * b2, b3 = b2 * b;
            for (long a = -B; a <= B; ++a) {
                if (b > 1 && gcd(Int(a), Int(b)) != 1) continue;
                Int A(a);
                Int Y = A * A * A + c2 * A * b4 + c3 * b6;
                bool ok;
                Int c = isqrt_if_square(Y, ok);
                if (!ok) continue;
                pts.push_back({make_rat(A, b2), make_rat(c, b3)});
            }
        }
    } else {
        for (long b = 1; b <= B; ++b)
            for (long a = -B; a <= B; ++a) {
                if (gcd(Int(a), Int(b)) != 1) continue;
                // b * b^n f(a/b)
                Int A(a), Bb(b), F = 0, bp = 1;
                std::vector<Int> bpow(n + 1);
                for (int k = 0; k <= n; ++k) {
                    bpow[k] = bp;
                    bp *= Bb;
                }
                Int ap = 1;
                for (int k = 0; k <= n; ++k) {
                    F += f.c[k] * ap * bpow[n - k];
                    ap *= A;
                }
                Int Y = Bb * F;
                bool ok;
                Int c = isqrt_if_square(Y, ok);
                if (!ok) continue;
                // y = c / b^{(n+1)/2}
                pts.push_back({make_rat(A, Bb), make_rat(c, ipow(Bb, (n + 1) / 2))});
            }
    }
    std::sort(pts.begin(), pts.end(), [](const AffinePoint& p, const AffinePoint& q) {
        Int hp = xheight(p.x), hq = xheight(q.x);
        if (hp != hq) return hp < hq;
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    });
    return pts;
}

std::vector<JacobianPoint> search_jacobian_points(const IntPoly& f, long B, size_t max_points) {
    auto pts = search_points(f, B);
    std::vector<JacobianPoint> base;
    for (auto& p : pts) {
        base.push_back({f, point_triple(f, p.x, p.y)});
        if (p.y != 0) base.push_back({f, point_triple(f, p.x, -p.y)});
    }
    std::vector<JacobianPoint> out;
    std::set<std::string> seen;
    auto add = [&](const JacobianPoint& P) {
        if (P.is_identity() || out.size() >= max_points) return;
        std::string key = format_triple(P.t);
        if (seen.insert(key).second) out.push_back(P);
    };
    for (auto& P : base) add(P);
    if (f.genus() >= 2)
        for (size_t i = 0; i < base.size() && out.size() < max_points; ++i)
            for (size_t j = i + 1; j < base.size() && out.size() < max_points; ++j) add(cantor_add(base[i], base[j]));
    return out;
}

MumfordTriple parse_triple(const IntPoly& f, const std::string& s) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t bar = s.find('|', start);
        parts.push_back(s.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    auto blank = [](const std::string& t) { return t.find_first_not_of(" \t") == std::string::npos; };
    if (parts.size() == 2) parts.insert(parts.begin() + 1, "");
    if (parts.size() != 3) throw Error(ErrorKind::InvalidInput, "triple must have the form 'U | V | R'");
    RatPoly U = parse_poly(parts[0]);
    RatPoly R = blank(parts[2]) ? RatPoly() : parse_poly(parts[2]);
    MumfordTriple t;
    if (blank(parts[1])) {
        RatPoly num = f.to_rat() - R * R;
        if (U.is_zero() || !(num % U).is_zero()) throw Error(ErrorKind::InvalidTriple, "U does not divide f - R^2");
        t = {U, num / U, R};
    } else {
        t = {U, parse_poly(parts[1]), R};
    }
    require_triple(f, t);
    return t;
}

std::string format_triple(const MumfordTriple& t) {
    return to_expr(t.U) + " | " + to_expr(t.V) + " | " + to_expr(t.R);
}

} // namespace hyperred
