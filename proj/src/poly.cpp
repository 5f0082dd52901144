#include "hyperred/poly.hpp"
#include "hyperred/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace hyperred {

RatPoly::RatPoly(std::initializer_list<long> coeffs) {
    for (long v : coeffs) c.emplace_back(v);
    trim();
}

RatPoly RatPoly::constant(const Rat& a) {
    RatPoly r;
    if (a != 0) r.c.push_back(a);
    return r;
}

RatPoly RatPoly::monomial(const Rat& a, int k) {
    RatPoly r;
    if (a == 0) return r;
    r.c.assign(k + 1, Rat(0));
    r.c[k] = a;
    return r;
}

void RatPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool RatPoly::is_integral() const {
    return std::all_of(c.begin(), c.end(), [](const Rat& a) { return a.get_den() == 1; });
}

Int RatPoly::denominator() const {
    Int d = 1;
    for (auto& a : c) d = lcm(d, Int(a.get_den()));
    return d;
}

Rat RatPoly::eval(const Rat& t) const {
    Rat r = 0;
    for (int i = deg(); i >= 0; --i) r = r * t + c[i];
    return r;
}

RatPoly RatPoly::derivative() const {
    RatPoly r;
    for (int i = 1; i <= deg(); ++i) r.c.push_back(c[i] * i);
    r.trim();
    return r;
}

RatPoly RatPoly::monic() const {
    if (is_zero()) return *this;
    Rat inv = 1 / lc();
    return *this * inv;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Rat(0));
    for (size_t i = 0; i < o.c.size(); ++i) c[i] -= o.c[i];
    trim();
    return *this;
}

RatPoly& RatPoly::operator*=(const Rat& a) {
    if (a == 0) {
        c.clear();
        return *this;
    }
    for (auto& v : c) v *= a;
    return *this;
}

RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly();
    std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    }
    return RatPoly(std::move(r));
}

std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
    if (b.is_zero()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    RatPoly r = a;
    if (r.deg() < b.deg()) return {RatPoly(), r};
    std::vector<Rat> q(r.deg() - b.deg() + 1, Rat(0));
    Rat inv = 1 / b.lc();
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        Rat t = r.lc() * inv;
        q[k] = t;
        for (int i = 0; i <= b.deg(); ++i) r.c[i + k] -= t * b.c[i];
        r.c.pop_back();
        r.trim();
    }
    return {RatPoly(std::move(q)), r};
}

RatPoly operator/(const RatPoly& a, const RatPoly& b) { return divmod(a, b).first; }
RatPoly operator%(const RatPoly& a, const RatPoly& b) { return divmod(a, b).second; }

RatPoly exact_div(const RatPoly& a, const RatPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
    return q;
}

RatPoly pow(const RatPoly& a, int e) {
    RatPoly r = RatPoly::constant(1);
    for (int i = 0; i < e; ++i) r = r * a;
    return r;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
    RatPoly x = a, y = b;
    while (!y.is_zero()) {
        RatPoly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

XGcd xgcd(const RatPoly& a, const RatPoly& b) {
    RatPoly r0 = a, r1 = b;
    RatPoly s0 = RatPoly::constant(1), s1;
    RatPoly t0, t1 = RatPoly::constant(1);
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        RatPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    Rat inv = 1 / r0.lc();
    return {r0 * inv, s0 * inv, t0 * inv};
}

RatPoly invmod(const RatPoly& a, const RatPoly& m) {
    XGcd e = xgcd(a % m, m);
    if (e.g.deg() != 0) throw Error(ErrorKind::NotCoprime, "polynomial not invertible modulo " + to_expr(m));
    return e.s % m;
}

IntPoly IntPoly::family(const std::vector<Int>& cs) {
    int n = (int)cs.size() + 1;
    IntPoly f;
    f.c.assign(n + 1, Int(0));
    f.c[n] = 1;
    for (size_t k = 0; k < cs.size(); ++k) f.c[n - 2 - k] = cs[k];
    f.trim();
    return f;
}

void IntPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool IntPoly::is_family() const {
    int n = deg();
    return n >= 3 && n % 2 == 1 && c[n] == 1 && c[n - 1] == 0;
}

std::vector<Int> IntPoly::family_coeffs() const {
    std::vector<Int> out;
    for (int i = 2; i <= deg(); ++i) out.push_back(ci(i));
    return out;
}

RatPoly IntPoly::to_rat() const {
    std::vector<Rat> r;
    for (auto& v : c) r.emplace_back(v);
    return RatPoly(std::move(r));
}

Int content(const IntPoly& a) {
    Int g = 0;
    for (auto& v : a.c) g = gcd(g, v);
    return g;
}

std::pair<IntPoly, Int> clear_denominators(const RatPoly& a) {
    Int d = a.denominator();
    IntPoly n;
    for (auto& v : a.c) n.c.push_back(Int(v.get_num()) * (d / Int(v.get_den())));
    return {n, d};
}

namespace {

using ZPoly = std::vector<Int>;

int zdeg(const ZPoly& a) { return (int)a.size() - 1; }

void ztrim(ZPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly prem(ZPoly a, const ZPoly& b) {
    int db = zdeg(b);
    int e = zdeg(a) - db + 1;
    const Int& lb = b.back();
    while (!a.empty() && zdeg(a) >= db) {
        Int t = a.back();
        int k = zdeg(a) - db;
        for (auto& v : a) v *= lb;
        for (int i = 0; i <= db; ++i) a[i + k] -= t * b[i];
        a.pop_back();
        ztrim(a);
        --e;
    }
    Int s = ipow(lb, std::max(e, 0));
    for (auto& v : a) v *= s;
    return a;
}

Int zcontent(const ZPoly& a) {
    Int g = 0;
    for (auto& v : a) g = gcd(g, v);
    return g;
}

// Cohen, subresultant algorithm for Res(A, B) over Z.
Int subresultant(ZPoly A, ZPoly B) {
    if (A.empty() || B.empty()) return 0;
    Int a = zcontent(A), b = zcontent(B);
    for (auto& v : A) v /= a;
    for (auto& v : B) v /= b;
    Int g = 1, h = 1;
    int s = 1;
    Int t = ipow(a, zdeg(B)) * ipow(b, zdeg(A));
    if (zdeg(A) < zdeg(B)) {
        std::swap(A, B);
        if (zdeg(A) % 2 == 1 && zdeg(B) % 2 == 1) s = -1;
    }
    if (zdeg(B) == 0) return s * t * ipow(B[0], zdeg(A));
    for (;;) {
        int delta = zdeg(A) - zdeg(B);
        if (zdeg(A) % 2 == 1 && zdeg(B) % 2 == 1) s = -s;
        ZPoly R = prem(A, B);
        A = std::move(B);
        Int div = g * ipow(h, delta);
        for (auto& v : R) v /= div;
        B = std::move(R);
        g = A.back();
        if (delta > 0) h = ipow(g, delta) / ipow(h, delta - 1);
        if (B.empty()) return 0;
        if (zdeg(B) == 0) {
            int da = zdeg(A);
            Int hh = ipow(B[0], da) / ipow(h, da - 1);
            return s * t * hh;
        }
    }
}

} // namespace

Rat resultant_std(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return 0;
    if (a.deg() == 0 && b.deg() == 0) return 1;
    auto [A, da] = clear_denominators(a);
    auto [B, db] = clear_denominators(b);
    Int r = subresultant(A.c, B.c);
    Rat q(r);
    q /= Rat(ipow(da, b.deg()) * ipow(db, a.deg()));
    return q;
}

Rat resultant(const RatPoly& a, const RatPoly& b) { return resultant_std(b, a); }

Rat discriminant(const RatPoly& f) {
    int n = f.deg();
    Rat r = resultant_std(f, f.derivative()) / f.lc();
    if ((n * (n - 1) / 2) % 2 == 1) r = -r;
    return r;
}

Int discriminant(const IntPoly& f) {
    Rat d = discriminant(f.to_rat());
    return Int(d.get_num());
}

namespace {

using u64 = unsigned long long;
using u128 = unsigned __int128;
constexpr u64 kP61 = (1ULL << 61) - 1;

u64 mulp(u64 a, u64 b) {
    u128 z = (u128)a * b;
    u64 lo = (u64)(z & kP61), hi = (u64)(z >> 61);
    u64 r = lo + hi;
    return r >= kP61 ? r - kP61 : r;
}

u64 powp(u64 a, u64 e) {
    u64 r = 1;
    while (e) {
        if (e & 1) r = mulp(r, a);
        a = mulp(a, a);
        e >>= 1;
    }
    return r;
}

u64 invp(u64 a) { return powp(a, kP61 - 2); }

u64 reduce61(const Int& v) {
    Int m((unsigned long)kP61);
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    u64 lo = mpz_getlimbn(r.get_mpz_t(), 0);
    return mpz_size(r.get_mpz_t()) == 0 ? 0 : lo;
}

u64 resultant_mod(std::vector<u64> a, std::vector<u64> b) {
    auto trim = [](std::vector<u64>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    if (a.empty() || b.empty()) return 0;
    u64 res = 1;
    while ((int)b.size() - 1 > 0) {
        int da = (int)a.size() - 1, db = (int)b.size() - 1;
        std::vector<u64> r = a;
        u64 inv = invp(b.back());
        while (!r.empty() && (int)r.size() - 1 >= db) {
            u64 t = mulp(r.back(), inv);
            int k = (int)r.size() - 1 - db;
            for (int i = 0; i <= db; ++i) r[i + k] = (r[i + k] + kP61 - mulp(t, b[i])) % kP61;
            r.pop_back();
            trim(r);
        }
        if (r.empty()) return 0;
        int dr = (int)r.size() - 1;
        if ((da * db) % 2 == 1) res = (kP61 - res) % kP61;
        res = mulp(res, powp(b.back(), (u64)(da - dr)));
        a = std::move(b);
        b = std::move(r);
    }
    return mulp(res, powp(b[0], (u64)a.size() - 1));
}

} // namespace

bool has_nonzero_discriminant(const IntPoly& f) {
    std::vector<u64> a, b;
    for (auto& v : f.c) a.push_back(reduce61(v));
    for (int i = 1; i <= f.deg(); ++i) b.push_back(reduce61(f.c[i] * i));
    if (resultant_mod(a, b) != 0) return true;
    return discriminant(f) != 0;
}

bool height_less_than(const IntPoly& f, const Rat& X) {
    Int p = X.get_num(), q = X.get_den();
    int n = f.deg();
    for (int i = 1; i <= n; ++i) {
        Int a = abs(f.ci(i));
        if (a * ipow(q, i) >= ipow(p, i)) return false;
    }
    return true;
}

std::vector<Rat> NewtonPolygon::slopes() const {
    std::vector<Rat> s;
    for (size_t k = 1; k < vertices.size(); ++k)
        s.push_back(make_rat(Int(vertices[k].second - vertices[k - 1].second),
                             Int(vertices[k].first - vertices[k - 1].first)));
    return s;
}

std::vector<Rat> NewtonPolygon::root_valuations() const {
    std::vector<Rat> out;
    auto s = slopes();
    for (size_t k = 1; k < vertices.size(); ++k)
        for (long j = vertices[k - 1].first; j < vertices[k].first; ++j) out.push_back(-s[k - 1]);
    std::sort(out.begin(), out.end());
    return out;
}

NewtonPolygon newton_polygon(const RatPoly& h, const Int& p) {
    if (h.is_zero()) throw Error(ErrorKind::InvalidInput, "Newton polygon of the zero polynomial");
    NewtonPolygon np;
    np.p = p;
    std::vector<std::pair<long, long>> pts;
    for (int i = 0; i <= h.deg(); ++i)
        if (h.c[i] != 0) pts.emplace_back(i, valuation(h.c[i], p));
    auto cross = [](const std::pair<long, long>& o, const std::pair<long, long>& a, const std::pair<long, long>& b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    for (auto& q : pts) {
        while (np.vertices.size() >= 2 && cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), q) <= 0)
            np.vertices.pop_back();
        np.vertices.push_back(q);
    }
    return np;
}

namespace {

Int to_mod(const Rat& a, const Int& m) {
    Int num(a.get_num()), den(a.get_den());
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), m.get_mpz_t());
    if (den != 1) r = (r * invmod(den, m)) % m;
    return r;
}

ZPoly zmod(ZPoly a, const Int& m) {
    for (auto& v : a) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    ztrim(a);
    return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    ztrim(r);
    return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
    if (b.size() > a.size()) a.resize(b.size(), Int(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    ztrim(a);
    return a;
}

// divmod mod p by a monic polynomial
std::pair<ZPoly, ZPoly> zdivmod_monic(ZPoly a, const ZPoly& b, const Int& m) {
    a = zmod(a, m);
    int db = zdeg(b);
    if (zdeg(a) < db) return {{}, a};
    ZPoly q(zdeg(a) - db + 1, Int(0));
    while (!a.empty() && zdeg(a) >= db) {
        int k = zdeg(a) - db;
        Int t = a.back();
        q[k] = t;
        for (int i = 0; i <= db; ++i) a[i + k] = (a[i + k] - t * b[i]) % m;
        a = zmod(a, m);
    }
    ztrim(q);
    return {zmod(q, m), a};
}

bool ratrecon(const Int& a, const Int& m, Rat& out) {
    Int bound;
    mpz_sqrt(bound.get_mpz_t(), Int(m / 2).get_mpz_t());
    Int r0 = m, r1, t0 = 0, t1 = 1;
    mpz_fdiv_r(r1.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    while (r1 > bound) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        Int t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (t1 == 0 || abs(t1) > bound || gcd(r1, t1) != 1) return false;
    out = make_rat(r1, t1);
    return true;
}

bool all_negative_root_valuations(const RatPoly& h, const Int& p) {
    if (h.deg() <= 0) return true;
    for (auto& v : newton_polygon(h, p).root_valuations())
        if (v >= 0) return false;
    return true;
}

long min_valuation(const RatPoly& h, const Int& p) {
    long m = kInfVal;
    for (auto& a : h.c) m = std::min(m, valuation(a, p));
    return m;
}

} // namespace

HenselSplit hensel_split(const RatPoly& h, const Int& p, long prec, long max_prec) {
    if (!h.is_monic()) throw Error(ErrorKind::InvalidInput, "hensel_split needs a monic polynomial");
    int d = h.deg();
    long mu = kInfVal;
    int i0 = 0;
    for (int i = 0; i <= d; ++i) {
        long v = valuation(h.c[i], p);
        if (v <= mu) {
            mu = v;
            i0 = i;
        }
    }
    if (i0 == d) return {h, RatPoly::constant(1), prec > 0 ? prec : 0, true};
    if (i0 == 0) return {RatPoly::constant(1), h, prec > 0 ? prec : 0, true};

    // H = p^{-mu} h, unit coefficient at x^{i0}, higher terms divisible by p.
    RatPoly H = h * Rat(ipow(p, -mu));
    ZPoly Hp = zmod([&] {
        ZPoly z;
        for (auto& a : H.c) z.push_back(to_mod(a, p));
        return z;
    }(), p);
    Int c0 = Hp[i0];
    Int cinv = invmod(c0, p);
    ZPoly G0(i0 + 1);
    for (int i = 0; i <= i0; ++i) G0[i] = (Hp[i] * cinv) % p;
    ZPoly K0{c0};
    if (prec <= 0) {
        ZPoly g0s = G0, k0s = K0;
        for (auto& v : g0s) v = smod(v, p);
        for (auto& v : k0s) v = smod(v, p);
        Rat r = resultant_std(RatPoly([&] { std::vector<Rat> z; for (auto& v : g0s) z.emplace_back(v); return z; }()),
                              RatPoly([&] { std::vector<Rat> z; for (auto& v : k0s) z.emplace_back(v); return z; }()));
        prec = 2 * (r == 0 ? 0 : valuation(r, p)) + 8;
    }

    for (; prec <= max_prec; prec *= 2) {
        long target = prec - mu; // valuation loss of p^mu when scaling back
        Int M = ipow(p, target);
        ZPoly Hm;
        for (auto& a : H.c) Hm.push_back(to_mod(a, M));
        ZPoly G = G0, K = K0;
        Int pj = p;
        for (long j = 1; j < target; ++j) {
            ZPoly E = zsub(Hm, zmul(G, K));
            E = zmod(E, pj * p);
            for (auto& v : E) v /= pj;
            E = zmod(E, p);
            // A K0 + B G0 = E mod p with deg A < i0
            ZPoly tE = E;
            for (auto& v : tE) v = (v * cinv) % p;
            auto [q1, A] = zdivmod_monic(tE, G0, p);
            ZPoly rest = zsub(E, zmul(A, K0));
            auto [B, rem] = zdivmod_monic(rest, G0, p);
            if (!rem.empty()) break;
            Int pm = pj;
            ZPoly Asc = A, Bsc = B;
            for (auto& v : Asc) v *= pm;
            for (auto& v : Bsc) v *= pm;
            G = zmod(zsub(G, zsub(ZPoly{}, Asc)), M);
            K = zmod(zsub(K, zsub(ZPoly{}, Bsc)), M);
            pj *= p;
        }
        G = zmod(G, M);
        std::vector<Rat> gc;
        for (auto& v : G) gc.emplace_back(smod(v, M));
        while ((int)gc.size() < i0 + 1) gc.emplace_back(0);
        RatPoly plus(gc);
        // rational reconstruction may recover an exact factor
        {
            std::vector<Rat> rc;
            bool ok = true;
            for (auto& v : G) {
                Rat q;
                if (!ratrecon(v, M, q)) {
                    ok = false;
                    break;
                }
                rc.push_back(q);
            }
            if (ok) {
                RatPoly cand(rc);
                if (cand.is_monic() && cand.deg() == i0 && (h % cand).is_zero() && cand.denominator() % p != 0) {
                    RatPoly minus = exact_div(h, cand);
                    if (all_negative_root_valuations(minus, p)) return {cand, minus, prec, true};
                }
            }
        }
        if (!plus.is_monic() || plus.deg() != i0) continue;
        auto [minus, rem] = divmod(h, plus);
        bool exact = rem.is_zero();
        if (!exact && min_valuation(rem, p) < prec) continue;
        if (!all_negative_root_valuations(minus, p)) continue;
        return {plus, minus, prec, exact};
    }
    throw Error(ErrorKind::InsufficientPrecision, "Hensel lifting did not verify");
}

// ---- text formats ----

IntPoly parse_family(const std::string& s, int g) {
    std::vector<Int> cs;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Rat q = parse_rat(tok);
        if (q.get_den() != 1) throw Error(ErrorKind::InvalidInput, "family coefficients must be integers");
        cs.emplace_back(q.get_num());
    }
    if (cs.size() < 2 || cs.size() % 2 != 0)
        throw Error(ErrorKind::InvalidInput, "family polynomial needs 2g coefficients c2..c_{2g+1}");
    if (g > 0 && (int)cs.size() != 2 * g) throw Error(ErrorKind::InvalidInput, "coefficient count does not match genus");
    return IntPoly::family(cs);
}

IntPoly parse_curve(const std::string& s) {
    if (s.find('x') == std::string::npos) return parse_family(s);
    RatPoly a = parse_poly(s);
    std::vector<Int> cs;
    for (const Rat& q : a.c) {
        if (q.get_den() != 1) throw Error(ErrorKind::InvalidInput, "coefficients must be integers");
        cs.emplace_back(q.get_num());
    }
    IntPoly f(cs);
    if (!f.is_family()) throw Error(ErrorKind::InvalidInput, "expected x^(2g+1) + c2 x^(2g-1) + ... with g >= 1");
    return f;
}

namespace {

RatPoly parse_expr(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!std::isspace((unsigned char)ch)) s += ch;
    RatPoly out;
    size_t i = 0;
    if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty polynomial");
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && (std::isdigit((unsigned char)s[j]) || s[j] == '/')) ++j;
        Rat coef = 1;
        if (j > i) coef = parse_rat(s.substr(i, j - i));
        i = j;
        if (i < s.size() && s[i] == '*') ++i;
        int k = 0;
        if (i < s.size() && s[i] == 'x') {
            k = 1;
            ++i;
            if (i < s.size() && s[i] == '^') {
                ++i;
                size_t e = i;
                while (e < s.size() && std::isdigit((unsigned char)s[e])) ++e;
                if (e == i) throw Error(ErrorKind::InvalidInput, "bad exponent in '" + raw + "'");
                k = std::stoi(s.substr(i, e - i));
                i = e;
            }
        } else if (j == i && i < s.size()) {
            // no progress
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw Error(ErrorKind::InvalidInput, "cannot parse polynomial '" + raw + "'");
        out += RatPoly::monomial(coef * sign, k);
    }
    return out;
}

} // namespace

RatPoly parse_poly(const std::string& s) {
    if (s.find('x') != std::string::npos) return parse_expr(s);
    std::vector<Rat> desc;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) desc.push_back(parse_rat(tok));
    if (desc.empty()) throw Error(ErrorKind::InvalidInput, "empty polynomial");
    std::reverse(desc.begin(), desc.end());
    return RatPoly(desc);
}

std::string format_family(const IntPoly& f) {
    std::string out;
    for (auto& v : f.family_coeffs()) {
        if (!out.empty()) out += ",";
        out += v.get_str();
    }
    return out;
}

std::string format_coeffs(const RatPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int i = a.deg(); i >= 0; --i) {
        if (i != a.deg()) out += ",";
        out += a.c[i].get_str();
    }
    return out;
}

std::string to_expr(const RatPoly& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int i = a.deg(); i >= 0; --i) {
        Rat v = a.c[i];
        if (v == 0) continue;
        bool neg = v < 0;
        Rat av = neg ? Rat(-v) : v;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (i == 0 || av != 1) out += av.get_str();
        if (i >= 1) out += (i == 0 || av != 1) ? "*x" : "x";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
}

} // namespace hyperred
