#include "hyperred/orbits.hpp"

#include "hyperred/errors.hpp"
#include "hyperred/quadspace.hpp"

#include <algorithm>
#include <functional>

namespace hyperred {

namespace {

// (U, V, R) with U V = f - R^2, possibly only up to p-adic precision.
struct Tri {
    RatPoly U, V, R;
};

std::pair<RatPoly, RatPoly> normal_form(const Tri& D, RatPoly a, RatPoly b) {
    int u = D.U.deg(), v = D.V.deg();
    for (int it = 0;; ++it) {
        bool changed = false;
        if (b.deg() >= u) {
            auto [q, r] = divmod(b, D.U);
            a -= q * D.R;
            b = r;
            changed = true;
        }
        if (a.deg() >= v) {
            auto [q, r] = divmod(a, D.V);
            a = r;
            b += q * D.R;
            changed = true;
        }
        if (!changed) break;
        if (it > 4 * (u + v) + 16) throw Error(ErrorKind::InvalidTriple, "normal form did not terminate");
    }
    return {a, b};
}

QVec to_coords(const Tri& D, const std::pair<RatPoly, RatPoly>& ab) {
    int u = D.U.deg(), v = D.V.deg();
    QVec c(u + v);
    for (int i = 0; i < v; ++i) c[i] = ab.first.coeff(i);
    for (int j = 0; j < u; ++j) c[v + j] = ab.second.coeff(j);
    return c;
}

// basis element k as (a, b)
std::pair<RatPoly, RatPoly> basis_elt(int u, int v, int k) {
    (void)u;
    if (k < v) return {RatPoly::monomial(1, k), RatPoly()};
    return {RatPoly(), RatPoly::monomial(1, k - v)};
}

long min_val(const QMat& m, const Int& p) {
    long best = kInfVal;
    for (auto& x : m.a)
        if (x != 0) best = std::min(best, valuation(x, p));
    return best;
}

long min_val(const RatPoly& a, const Int& p) {
    long best = kInfVal;
    for (auto& x : a.c)
        if (x != 0) best = std::min(best, valuation(x, p));
    return best;
}

QMat scaled_identity(int n, const Rat& s) {
    QMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

Rat ppow(const Int& p, long e) {
    if (e >= 0) return Rat(ipow(p, e));
    return make_rat(1, ipow(p, -e));
}

QMat local_rec(const IntPoly& f, const Tri& D, const Int& p, long prec, int depth) {
    int n = f.deg();
    if (depth > 4 * n + 8) throw Error(ErrorKind::InvalidTriple, "local lattice recursion too deep");
    if (D.U.deg() <= 0) return QMat::identity(n);
    RatPoly F = f.to_rat();
    int u = D.U.deg(), v = D.V.deg();

    long cu = min_val(D.U, p);
    if (cu < 0) {
        // split off the roots of negative valuation
        long r = (-cu + 1) / 2;
        HenselSplit hs = hensel_split(D.U, p, prec, prec);
        auto [q, Rp] = divmod(D.R, hs.plus);
        Tri Dp{hs.plus, divmod(F - Rp * Rp, hs.plus).first, Rp};
        QMat Phi(n, n);
        for (int k = 0; k < n; ++k) {
            auto [a, b] = basis_elt(u, v, k);
            RatPoly na = a * hs.minus - b * q;
            Phi.set_col(k, to_coords(Dp, normal_form(Dp, na, b)));
        }
        QMat Lp = local_rec(f, Dp, p, prec, depth + 1);
        QMat X = inverse(Phi) * Lp;
        return X * QMat(scaled_identity(n, ppow(p, -r)));
    }
    long cr = D.R.is_zero() ? 0 : min_val(D.R, p);
    if (cr >= 0) return QMat::identity(n);
    long s = -cr;
    // multiplication by (y + R) / U onto D' = (V_+, ., -R mod V_+)
    HenselSplit hs = hensel_split(D.V, p, prec, prec);
    auto [q, Rn] = divmod(-D.R, hs.plus);
    RatPoly R1 = -q;
    Tri Dq{hs.plus, divmod(F - Rn * Rn, hs.plus).first, Rn};
    QMat Psi(n, n);
    for (int k = 0; k < n; ++k) {
        auto [a, b] = basis_elt(u, v, k);
        Psi.set_col(k, to_coords(Dq, normal_form(Dq, a * R1 + b * hs.minus, a)));
    }
    QMat Lq = local_rec(f, Dq, p, prec, depth + 1);
    return inverse(Psi) * Lq * scaled_identity(n, ppow(p, -s));
}

Tri tri_of(const MumfordTriple& t) { return {t.U, t.V, t.R}; }

// checks that `X` is unimodular and T-stable at p
bool locally_good(const DivisorSpace& sp, const QMat& X, const Int& p) {
    QMat G = X.transpose() * sp.gram * X;
    if (min_val(G, p) < 0) return false;
    if (valuation(det(G), p) != 0) return false;
    QMat T = inverse(X) * sp.mulx * X;
    return min_val(T, p) >= 0;
}

} // namespace

QVec DivisorSpace::coords(const RatPoly& a, const RatPoly& b) const {
    Tri D = tri_of(t);
    return to_coords(D, normal_form(D, a, b));
}

Rat DivisorSpace::pairing(const RatPoly& a1, const RatPoly& b1, const RatPoly& a2, const RatPoly& b2) const {
    RatPoly w = a1 * a2 * t.U - (a1 * b2 + a2 * b1) * t.R - b1 * b2 * t.V;
    Rat x = tau(f, w);
    return (u % 2) ? -x : x;
}

DivisorSpace divisor_space(const IntPoly& f, const MumfordTriple& t) {
    require_triple(f, t);
    DivisorSpace sp;
    sp.f = f;
    sp.t = t;
    sp.u = t.U.deg();
    sp.v = t.V.deg();
    int n = sp.dim(), g = f.genus();
    sp.gram = QMat(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            auto [a1, b1] = basis_elt(sp.u, sp.v, i);
            auto [a2, b2] = basis_elt(sp.u, sp.v, j);
            sp.gram(i, j) = sp.gram(j, i) = sp.pairing(a1, b1, a2, b2);
        }
    sp.mulx = QMat(n, n);
    for (int k = 0; k < n; ++k) {
        auto [a, b] = basis_elt(sp.u, sp.v, k);
        sp.mulx.set_col(k, sp.coords(a * RatPoly::x(), b * RatPoly::x()));
    }
    sp.muly = {t.R, t.V, t.U, -t.R};
    int half = sp.u / 2;
    sp.isotropic = QMat(n, g);
    int c = 0;
    for (int i = 0; i < g - half; ++i) sp.isotropic(i, c++) = 1;
    for (int j = 0; j < half; ++j) sp.isotropic(sp.v + j, c++) = 1;
    QMat iso = sp.isotropic.transpose() * sp.gram * sp.isotropic;
    if (iso != QMat(g, g)) throw Error(ErrorKind::InvalidTriple, "L_D is not isotropic");
    return sp;
}

QMat local_lattice(const DivisorSpace& space, const Int& p, long prec) {
    QMat X = local_rec(space.f, tri_of(space.t), p, prec, 0);
    if (!locally_good(space, X, p)) throw Error(ErrorKind::InsufficientPrecision, "local lattice failed verification");
    return X;
}

GlobalLattice global_lattice(const IntPoly& f, const MumfordTriple& t) {
    GlobalLattice gl;
    gl.space = divisor_space(f, t);
    const DivisorSpace& sp = gl.space;
    int n = sp.dim();

    Int den = lcm(lcm(t.U.denominator(), t.V.denominator()), t.R.denominator());
    gl.primes = den == 1 ? std::vector<Int>{} : prime_divisors(den);
    gl.M = t.U.denominator();
    gl.N = 1;
    long rsum = 0;
    for (auto& p : gl.primes) {
        long cu = min_val(t.U, p);
        long r = cu < 0 ? (-cu + 1) / 2 : 0;
        gl.N *= ipow(p, r);
        rsum += r + (t.R.is_zero() ? 0 : std::max(0L, -min_val(t.R, p)));
    }
    if (gl.N * gl.N != gl.M) throw Error(ErrorKind::InvalidTriple, "denominator of U is not a square");

    long start = 2 * rsum + 8;
    for (long prec = start; prec <= 4096; prec *= 2) {
        try {
            std::vector<QMat> stars;
            std::vector<long> es;
            std::vector<QMat> lams;
            for (auto& p : gl.primes) {
                QMat X = local_lattice(sp, p, prec);
                long b = std::max(0L, -min_val(X, p));
                long a = std::max(0L, -min_val(inverse(X), p));
                QMat lam = lattice_intersection(lattice_sum(X, scaled_identity(n, ppow(p, a))),
                                                scaled_identity(n, ppow(p, -b)));
                lams.push_back(lam);
                es.push_back(std::max(a, b) + 1);
            }
            Int E = 1;
            for (size_t i = 0; i < gl.primes.size(); ++i) E *= ipow(gl.primes[i], es[i]);
            QMat M = QMat::identity(n);
            for (size_t i = 0; i < gl.primes.size(); ++i) {
                Int pe = ipow(gl.primes[i], es[i]);
                QMat star = lattice_sum(lams[i], scaled_identity(n, make_rat(pe, E / pe)));
                M = i == 0 ? star : lattice_intersection(M, star);
            }
            M = lattice_basis(M);
            QMat G = M.transpose() * sp.gram * M;
            if (!is_integral(G)) continue;
            Rat d = det(G);
            if (d != 1 && d != -1) continue;
            QMat Minv = inverse(M);
            QMat T = Minv * sp.mulx * M;
            if (!is_integral(T)) continue;
            QVec nu(n);
            nu[0] = Rat(gl.N);
            QVec c = Minv * nu;
            ZVec cz(n);
            bool ok = true;
            for (int i = 0; i < n; ++i) {
                if (c[i].get_den() != 1) ok = false;
                cz[i] = c[i].get_num();
            }
            if (!ok || !is_primitive(cz)) continue;
            gl.basis = M;
            gl.marked = cz;
            gl.gram = to_z(G);
            gl.mulx = to_z(T);
            gl.prec = prec;
            return gl;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::InsufficientPrecision) throw;
        }
    }
    throw Error(ErrorKind::InsufficientPrecision, "global lattice did not verify at 4096 p-adic digits");
}

OrbitRep integral_orbit_rep(const IntPoly& f, const MumfordTriple& t) {
    OrbitRep rep;
    rep.lattice = global_lattice(f, t);
    const GlobalLattice& gl = rep.lattice;
    QMat G = to_q(gl.gram);
    rep.P = normalize_unimodular(G, gl.marked);
    QMat P = to_q(rep.P);
    rep.T = to_z(P * to_q(gl.mulx) * inverse(P));
    QVec w = P * QVec(gl.marked.begin(), gl.marked.end());
    rep.w = ZVec(w.size());
    for (size_t i = 0; i < w.size(); ++i) rep.w[i] = w[i].get_num();
    return rep;
}

OrbitReport verify_orbit(const QMat& T, const IntPoly& f) {
    OrbitReport r;
    int n = f.deg();
    if (T.rows != n || T.cols != n) return r;
    r.integral = is_integral(T);
    r.self_adjoint = is_self_adjoint(T, J_matrix(n));
    r.trace_zero = trace(T) == 0;
    r.charpoly = charpoly(T) == f.to_rat();
    return r;
}

bool is_distinguished_witness(const QMat& T, const QMat& L) {
    int n = T.rows, g = (n - 1) / 2;
    if (L.cols != g || rank(L) != g) return false;
    QMat J = J_matrix(n);
    return L.transpose() * J * L == QMat(g, g) && L.transpose() * J * T * L == QMat(g, g);
}

QMat transported_isotropic(const OrbitRep& rep) {
    QMat C = inverse(rep.lattice.basis) * rep.lattice.space.isotropic;
    return to_q(rep.P) * C;
}

std::optional<QMat> find_distinguished_subspace(const QMat& T, const std::optional<QMat>& candidate, long bound) {
    if (candidate && is_distinguished_witness(T, *candidate)) return candidate;
    int n = T.rows, g = (n - 1) / 2;
    QMat J = J_matrix(n), JT = J * T;
    auto form = [](const QMat& A, const ZVec& x, const ZVec& y) {
        Rat s = 0;
        for (int i = 0; i < A.rows; ++i)
            for (int j = 0; j < A.cols; ++j)
                if (x[i] != 0 && y[j] != 0) s += A(i, j) * Rat(x[i] * y[j]);
        return s;
    };
    std::vector<ZVec> cands;
    std::vector<long> x(n, -bound);
    while (true) {
        int lead = 0;
        while (lead < n && x[lead] == 0) ++lead;
        if (lead < n && x[lead] > 0) {
            ZVec v(n);
            for (int i = 0; i < n; ++i) v[i] = x[i];
            if (is_primitive(v) && form(J, v, v) == 0 && form(JT, v, v) == 0) cands.push_back(v);
        }
        int i = n - 1;
        while (i >= 0 && x[i] == bound) x[i--] = -bound;
        if (i < 0) break;
        ++x[i];
    }
    std::vector<int> pick;
    std::optional<QMat> found;
    std::function<void(size_t)> rec = [&](size_t from) {
        if (found) return;
        if ((int)pick.size() == g) {
            QMat L(n, g);
            for (int k = 0; k < g; ++k)
                for (int i = 0; i < n; ++i) L(i, k) = Rat(cands[pick[k]][i]);
            if (rank(L) == g) found = L;
            return;
        }
        for (size_t c = from; c < cands.size() && !found; ++c) {
            bool ok = true;
            for (int k : pick)
                if (form(J, cands[k], cands[c]) != 0 || form(JT, cands[k], cands[c]) != 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pick.push_back((int)c);
            QMat L(n, (int)pick.size());
            for (size_t k = 0; k < pick.size(); ++k)
                for (int i = 0; i < n; ++i) L(i, (int)k) = Rat(cands[pick[k]][i]);
            if (rank(L) == (int)pick.size()) rec(c + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return found;
}

} // namespace hyperred
