#include "hyperred/reduction.hpp"
#include "hyperred/errors.hpp"
#include "hyperred/quadspace.hpp"
#include "hyperred/roots.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace hyperred {

BMat BMat::identity(int n) {
    BMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Ball(1);
    return m;
}

BMat BMat::from(const QMat& q) {
    BMat m(q.rows, q.cols);
    for (size_t k = 0; k < q.a.size(); ++k) m.a[k] = Ball(q.a[k]);
    return m;
}

BMat BMat::from(const ZMat& q) {
    BMat m(q.rows, q.cols);
    for (size_t k = 0; k < q.a.size(); ++k) m.a[k] = Ball(q.a[k]);
    return m;
}

BMat BMat::from_doubles(int r, int c, const std::vector<double>& v) {
    BMat m(r, c);
    for (size_t k = 0; k < v.size(); ++k) m.a[k] = Ball::from_double(v[k]);
    return m;
}

BMat BMat::transpose() const {
    BMat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

std::vector<double> BMat::mids() const {
    std::vector<double> v;
    for (auto& x : a) v.push_back(x.mid_d());
    return v;
}

BMat operator*(const BMat& x, const BMat& y) {
    BMat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < y.cols; ++j) {
            Ball s(0);
            for (int k = 0; k < x.cols; ++k) s += x(i, k) * y(k, j);
            z(i, j) = std::move(s);
        }
    return z;
}

BMat operator-(const BMat& x, const BMat& y) {
    BMat z = x;
    for (size_t k = 0; k < z.a.size(); ++k) z.a[k] -= y.a[k];
    return z;
}

namespace {

int pivot_row(const BMat& m, int col, int from) {
    int best = -1;
    double bv = -1;
    for (int r = from; r < m.rows; ++r) {
        double v = std::fabs(m(r, col).mid_d());
        if (v > bv) bv = v, best = r;
    }
    return best;
}

void swap_rows(BMat& m, int a, int b) {
    if (a == b) return;
    for (int j = 0; j < m.cols; ++j) std::swap(m(a, j), m(b, j));
}

} // namespace

Ball det(const BMat& m0) {
    BMat m = m0;
    int n = m.rows;
    Ball d(1);
    for (int c = 0; c < n; ++c) {
        int p = pivot_row(m, c, c);
        if (m(p, c).contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "determinant pivot not separated from zero");
        if (p != c) {
            swap_rows(m, p, c);
            d = -d;
        }
        d *= m(c, c);
        for (int r = c + 1; r < n; ++r) {
            Ball q = m(r, c) / m(c, c);
            for (int j = c; j < n; ++j) m(r, j) -= q * m(c, j);
        }
    }
    return d;
}

BMat inverse(const BMat& m0) {
    int n = m0.rows;
    BMat m = m0, inv = BMat::identity(n);
    for (int c = 0; c < n; ++c) {
        int p = pivot_row(m, c, c);
        if (m(p, c).contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "inverse pivot not separated from zero");
        swap_rows(m, p, c);
        swap_rows(inv, p, c);
        Ball piv = m(c, c);
        for (int j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            Ball q = m(r, c);
            for (int j = 0; j < n; ++j) {
                m(r, j) -= q * m(c, j);
                inv(r, j) -= q * inv(c, j);
            }
        }
    }
    return inv;
}

bool certainly_positive_definite(const BMat& m) {
    int n = m.rows;
    BMat L(n, n);
    for (int j = 0; j < n; ++j) {
        Ball s = m(j, j);
        for (int k = 0; k < j; ++k) s -= L(j, k) * L(j, k);
        if (!s.is_positive()) return false;
        L(j, j) = sqrt(s);
        for (int i = j + 1; i < n; ++i) {
            Ball t = m(i, j);
            for (int k = 0; k < j; ++k) t -= L(i, k) * L(j, k);
            L(i, j) = t / L(j, j);
        }
    }
    return true;
}

double max_abs(const BMat& m) {
    double r = 0;
    for (auto& x : m.a) r = std::max(r, std::max(std::fabs(x.lo()), std::fabs(x.hi())));
    return r;
}

Ball quad(const BMat& M, const ZVec& x, const ZVec& y) {
    Ball s(0);
    for (int i = 0; i < M.rows; ++i) {
        if (x[i] == 0) continue;
        Ball r(0);
        for (int j = 0; j < M.cols; ++j)
            if (y[j] != 0) r += M(i, j) * Ball(y[j]);
        s += Ball(x[i]) * r;
    }
    return s;
}

Rat mid_rat(const Ball& b) {
    if (mpfr_zero_p(b.mid.get())) return Rat(0);
    mpz_t z;
    mpz_init(z);
    long e = mpfr_get_z_2exp(z, b.mid.get());
    Int m(z);
    mpz_clear(z);
    if (e >= 0) return make_rat(m * ipow(Int(2), e), Int(1));
    return make_rat(m, ipow(Int(2), -e));
}

// ---------------------------------------------------------------------------
// Reduction covariant

namespace {

QMat cyclic_krylov(const QMat& T) {
    int n = T.rows;
    auto krylov = [&](const QVec& v) {
        QMat K(n, n);
        QVec w = v;
        for (int j = 0; j < n; ++j) {
            K.set_col(j, w);
            w = T * w;
        }
        return K;
    };
    for (int t = 0; t < 4 * n + 8; ++t) {
        QVec v(n);
        if (t < n) {
            v[t] = 1;
        } else {
            for (int i = 0; i < n; ++i) v[i] = ipow(Int(t - n + 2), i);
        }
        QMat K = krylov(v);
        if (det(K) != 0) return K;
    }
    throw Error(ErrorKind::InvalidInput, "operator is not cyclic");
}

double target_radius(long prec) { return std::ldexp(1.0, -(int)std::min(prec - 16, 1000L)); }

CovariantGram covariant_at(const QMat& T, const QMat& G, const QMat& K, const RatPoly& cp) {
    int n = T.rows;
    auto roots = complex_roots(cp, target_radius(working_prec()));
    BMat Kb = BMat::from(K), Gb = BMat::from(G);
    std::vector<Rat> c = cp.c; // monic
    BMat H(n, n);
    for (auto& rd : roots.roots) {
        CBall w = rd.ball();
        // f / (x - w) by synthetic division
        std::vector<CBall> q(n);
        q[n - 1] = CBall(Ball(1));
        for (int k = n - 1; k >= 1; --k) q[k - 1] = CBall(Ball(c[k])) + w * q[k];
        std::vector<CBall> b(n), gb(n);
        for (int r = 0; r < n; ++r) {
            CBall s(Ball(0));
            for (int k = 0; k < n; ++k) s += CBall(Kb(r, k)) * q[k];
            b[r] = s;
        }
        for (int r = 0; r < n; ++r) {
            CBall s(Ball(0));
            for (int k = 0; k < n; ++k)
                if (G(r, k) != 0) s += CBall(Gb(r, k)) * b[k];
            gb[r] = s;
        }
        CBall beta(Ball(0));
        for (int r = 0; r < n; ++r) beta += b[r] * gb[r];
        Ball ab = abs(beta);
        if (!ab.is_positive()) throw Error(ErrorKind::PrecisionExhausted, "eigenvector norm not separated from zero");
        for (int r = 0; r < n; ++r)
            for (int s = 0; s < n; ++s) H(r, s) += (gb[r].re * gb[s].re + gb[r].im * gb[s].im) / ab;
    }
    CovariantGram cg;
    cg.H = H;
    cg.prec = working_prec();
    BMat A = inverse(Gb) * H;
    double hs = max_abs(H);
    cg.compat_residual = max_abs(A.transpose() * H * A - H) / hs;
    BMat Tb = BMat::from(T);
    BMat Tadj = inverse(H) * Tb.transpose() * H;
    double ts = std::max(1.0, max_abs(Tb));
    cg.commute_residual = max_abs(Tb * Tadj - Tadj * Tb) / (ts * ts);
    return cg;
}

} // namespace

CovariantGram reduction_covariant(const QMat& T, const std::optional<QMat>& G0, long prec) {
    int n = T.rows;
    QMat G = G0 ? *G0 : J_matrix(n);
    if (!is_self_adjoint(T, G)) throw Error(ErrorKind::InvalidInput, "operator is not self-adjoint for the form");
    RatPoly cp = charpoly(T);
    if (discriminant(cp) == 0) throw Error(ErrorKind::RepeatedRoot, "characteristic polynomial has a repeated root");
    QMat K = cyclic_krylov(T);
    long p = std::max(prec > 0 ? prec : working_prec(), 64L);
    for (; p <= kMaxPrec; p *= 2) {
        PrecGuard guard(p);
        try {
            CovariantGram cg = covariant_at(T, G, K, cp);
            if (cg.compat_residual <= 1e-12 && cg.commute_residual <= 1e-12 && certainly_positive_definite(cg.H))
                return cg;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::PrecisionExhausted) throw;
        }
    }
    throw Error(ErrorKind::PrecisionExhausted, "reduction covariant not certified at the maximal precision");
}

Ball covariant_norm_of_U(const IntPoly& f, const RatPoly& U) {
    auto roots = complex_roots(f);
    RatPoly df = f.to_rat().derivative();
    Ball s(0);
    for (auto& rd : roots.roots) {
        CBall w = rd.ball();
        s += abs(eval(U, w)) / abs(eval(df, w));
    }
    return s;
}

BMat lattice_gram(const QMat& basis, const BMat& H) {
    BMat B = BMat::from(basis);
    return B.transpose() * H * B;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Reduced {
    ZMat C; // unimodular, columns = reduced basis
    BMat R; // C^t Q C
};

Reduced lll_reduce(const BMat& Q) {
    int k = Q.rows;
    QMat Qm(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) Qm(i, j) = (mid_rat(Q(i, j)) + mid_rat(Q(j, i))) / 2;
    Reduced r;
    r.C = lll_gram(Qm);
    BMat Cb = BMat::from(r.C);
    r.R = Cb.transpose() * Q * Cb;
    return r;
}

bool positive_first(const ZVec& v) {
    for (auto& x : v)
        if (x != 0) return x > 0;
    return false;
}

} // namespace

std::vector<ZVec> short_vectors(const BMat& Q, double bound2, size_t cap) {
    int k = Q.rows;
    std::vector<ZVec> out;
    if (k == 0 || !(bound2 > 0)) return out;
    Reduced red = lll_reduce(Q);
    // Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2 in long double
    std::vector<long double> d(k);
    std::vector<std::vector<long double>> mu(k, std::vector<long double>(k, 0));
    std::vector<std::vector<long double>> R(k, std::vector<long double>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) R[i][j] = mpfr_get_ld(red.R(i, j).mid.get(), MPFR_RNDN);
    for (int i = 0; i < k; ++i) {
        long double s = R[i][i];
        for (int l = 0; l < i; ++l) s -= mu[l][i] * mu[l][i] * d[l];
        if (!(s > 0)) throw Error(ErrorKind::PrecisionExhausted, "Gram matrix not numerically positive definite");
        d[i] = s;
        for (int j = i + 1; j < k; ++j) {
            long double t = R[i][j];
            for (int l = 0; l < i; ++l) t -= mu[l][i] * mu[l][j] * d[l];
            mu[i][j] = t / d[i];
        }
    }
    long double B = (long double)bound2 * (1 + 1e-6L);
    std::vector<long> x(k, 0);
    size_t nodes = 0;
    std::function<void(int, long double)> rec = [&](int i, long double rem) {
        long double c = 0;
        for (int j = i + 1; j < k; ++j) c -= mu[i][j] * x[j];
        long double s = std::sqrt(std::max(rem, 0.0L) / d[i]);
        long lo = (long)std::ceil(c - s), hi = (long)std::floor(c + s);
        for (long v = lo; v <= hi; ++v) {
            if (++nodes > 50 * cap) throw Error(ErrorKind::PrecisionExhausted, "enumeration cap exceeded");
            x[i] = v;
            long double r = rem - d[i] * (v - c) * (v - c);
            if (r < -1e-12L * B) continue;
            if (i > 0) {
                rec(i - 1, r);
            } else {
                bool zero = std::all_of(x.begin(), x.end(), [](long t) { return t == 0; });
                if (zero) continue;
                ZVec y(k, Int(0));
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b)
                        if (x[b] != 0) y[a] += red.C(a, b) * Int(x[b]);
                if (!positive_first(y)) continue;
                out.push_back(std::move(y));
                if (out.size() > cap) throw Error(ErrorKind::PrecisionExhausted, "too many short vectors");
            }
        }
        x[i] = 0;
    };
    rec(k - 1, B);
    // drop the clear excess introduced by the slack
    std::vector<ZVec> kept;
    Ball bb = Ball::from_double(bound2 * (1 + 1e-6));
    for (auto& v : out)
        if (!certainly_lt(bb, quad(Q, v, v))) kept.push_back(std::move(v));
    return kept;
}

ShortestVector shortest_vector(const BMat& Q) {
    int k = Q.rows;
    if (k == 0) throw Error(ErrorKind::InvalidInput, "empty lattice");
    Reduced red = lll_reduce(Q);
    double b2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) b2 = std::min(b2, red.R(i, i).hi());
    auto cands = short_vectors(Q, b2);
    if (cands.empty()) throw Error(ErrorKind::PrecisionExhausted, "enumeration missed the reduced basis");
    std::vector<Ball> len;
    for (auto& v : cands) len.push_back(quad(Q, v, v));
    size_t best = 0;
    for (size_t i = 1; i < cands.size(); ++i)
        if (len[i].mid_d() < len[best].mid_d()) best = i;
    // ties (overlapping enclosures) resolve to the lexicographic minimum
    size_t pick = best;
    for (size_t i = 0; i < cands.size(); ++i)
        if (overlaps(len[i], len[best]) && cands[i] < cands[pick]) pick = i;
    return {cands[pick], sqrt(len[pick])};
}

ShortestVector shortest_vector(const QMat& basis, const BMat& H) { return shortest_vector(lattice_gram(basis, H)); }

// ---------------------------------------------------------------------------
// Canonical plot

std::vector<int> lower_hull_vertices(const std::vector<double>& y, double tol) {
    int k = (int)y.size() - 1;
    std::vector<int> v;
    for (int i = 0; i <= k; ++i) {
        bool corner = true;
        for (int a = 0; a < i && corner; ++a)
            for (int b = i + 1; b <= k && corner; ++b) {
                double chord = y[a] + (y[b] - y[a]) * (i - a) / double(b - a);
                double scale = 1 + std::max({std::fabs(y[a]), std::fabs(y[b]), std::fabs(y[i])});
                if (y[i] > chord - tol * scale) corner = false;
            }
        if (corner) v.push_back(i);
    }
    return v;
}

std::vector<std::pair<int, double>> CanonicalPlot::points() const {
    std::vector<std::pair<int, double>> p;
    for (int i : vertices) p.emplace_back(i, log_covol[i].mid_d());
    return p;
}

std::vector<ZMat> CanonicalPlot::filtration() const {
    std::vector<ZMat> f;
    for (int i : vertices) f.push_back(minimizer[i]);
    return f;
}

Ball log_covolume_raw(const ZMat& S, const BMat& Q) {
    if (S.cols == 0) return Ball(0);
    BMat Sb = BMat::from(S);
    return log(det(Sb.transpose() * Q * Sb)) / Ball(2);
}

namespace {

Int maximal_minor_gcd(const ZMat& S) {
    int k = S.rows, i = S.cols;
    Int g(0);
    std::vector<int> rows(i);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == i) {
            QMat m(i, i);
            for (int a = 0; a < i; ++a)
                for (int b = 0; b < i; ++b) m(a, b) = Rat(S(rows[a], b));
            g = gcd(g, det(m).get_num());
            return;
        }
        for (int r = start; r < k; ++r) {
            rows[pos] = r;
            rec(pos + 1, r + 1);
        }
    };
    rec(0, 0);
    return abs(g);
}

// Hermite constants to the power of the dimension.
const double kHermitePow[] = {1, 1, 4.0 / 3, 2, 4, 8, 64.0 / 3, 64, 256};

struct Sub {
    Ball logc;
    ZMat S;
};

// Minimal log covolume over saturated rank-i sublattices with covolume <= bound.
std::optional<Sub> min_sublattice(const BMat& Q, int i, double bound) {
    int k = Q.rows;
    if (i == 0) return Sub{Ball(0), ZMat(k, 0)};
    if (i == k) return Sub{log(det(Q)) / Ball(2), ZMat::identity(k)};
    if (i > 8) throw Error(ErrorKind::InvalidInput, "rank too large for the canonical plot");
    Reduced red = lll_reduce(Q);
    if (!std::isfinite(bound)) {
        ZMat P(k, i);
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < i; ++b) P(a, b) = red.C(a, b);
        bound = exp(log_covolume_raw(P, Q)).hi();
    }
    double gam = std::pow(kHermitePow[i], 1.0 / i);
    double r2 = gam * std::pow(bound, 2.0 / i) * (1 + 1e-6);
    auto vs = short_vectors(Q, r2);
    std::vector<std::pair<Ball, ZVec>> cands;
    for (auto& v : vs)
        if (is_primitive(v)) cands.emplace_back(quad(Q, v, v), v);
    std::sort(cands.begin(), cands.end(), [](auto& a, auto& b) {
        if (a.first.mid_d() != b.first.mid_d()) return a.first.mid_d() < b.first.mid_d();
        return a.second < b.second;
    });
    std::optional<Sub> best;
    double cur = bound * (1 + 1e-6);
    for (auto& [l2, v] : cands) {
        Ball len = sqrt(l2);
        // unimodular W with first column v
        ZMat A(k, 1);
        for (int a = 0; a < k; ++a) A(a, 0) = v[a];
        ZMat W = to_z(inverse(to_q(hnf_rows(A).U)));
        BMat Wb = BMat::from(W);
        BMat Qw = Wb.transpose() * Q * Wb;
        BMat P(k - 1, k - 1);
        for (int a = 0; a < k - 1; ++a)
            for (int b = 0; b < k - 1; ++b) P(a, b) = Qw(a + 1, b + 1) - Qw(a + 1, 0) * Qw(0, b + 1) / Qw(0, 0);
        auto sub = min_sublattice(P, i - 1, cur / len.lo());
        if (!sub) continue;
        Ball total = log(len) + sub->logc;
        if (best && !(total.mid_d() < best->logc.mid_d())) continue;
        ZMat S(k, i);
        for (int a = 0; a < k; ++a) S(a, 0) = v[a];
        for (int c = 0; c < i - 1; ++c)
            for (int a = 0; a < k; ++a) {
                Int s(0);
                for (int b = 0; b < k - 1; ++b) s += W(a, b + 1) * sub->S(b, c);
                S(a, c + 1) = s;
            }
        best = Sub{total, S};
        cur = std::min(cur, exp(total).hi() * (1 + 1e-9));
    }
    return best;
}

} // namespace

Ball log_covolume(const ZMat& S, const BMat& Q) {
    if (S.cols == 0) return Ball(0);
    Int idx = maximal_minor_gcd(S);
    if (idx == 0) throw Error(ErrorKind::InvalidInput, "columns are dependent");
    return log_covolume_raw(S, Q) - log(Ball(idx));
}

CanonicalPlot canonical_plot(const BMat& Q) {
    int k = Q.rows;
    CanonicalPlot p;
    p.rank = k;
    for (int i = 0; i <= k; ++i) {
        auto s = min_sublattice(Q, i, std::numeric_limits<double>::infinity());
        if (!s) throw Error(ErrorKind::PrecisionExhausted, "no sublattice found below the reduced-basis bound");
        p.log_covol.push_back(s->logc);
        p.minimizer.push_back(s->S);
    }
    std::vector<double> y;
    for (auto& b : p.log_covol) y.push_back(b.mid_d());
    p.vertices = lower_hull_vertices(y);
    return p;
}

CanonicalPlot canonical_plot(const QMat& basis, const BMat& H) { return canonical_plot(lattice_gram(basis, H)); }

std::pair<Ball, Ball> covolume_formula_check(const IntPoly& f, int m) {
    int n = f.deg();
    if (m < 1 || m > n) throw Error(ErrorKind::InvalidInput, "rank out of range");
    auto cg = reduction_covariant(mulx_matrix(f), tau_gram(f, RatPoly{1}));
    ZMat S(n, m);
    for (int i = 0; i < m; ++i) S(i, i) = 1;
    Ball lhs = log_covolume_raw(S, cg.H);

    PrecGuard guard(cg.prec);
    auto roots = complex_roots(f, target_radius(cg.prec));
    std::vector<std::vector<Ball>> gap(n, std::vector<Ball>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) gap[i][j] = abs(roots.roots[i].ball() - roots.roots[j].ball());
    Ball sum(0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) != m) continue;
        Ball prod(1);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (((mask >> i) & 1) == ((mask >> j) & 1)) prod *= gap[i][j];
        sum += prod;
    }
    Ball disc = abs(Ball(discriminant(f)));
    Ball rhs = log(sum) / Ball(2) - log(disc) / Ball(4);
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Cusp coordinates and Siegel reduction

CuspCoordinates cusp_coordinates(const BMat& H) {
    int n = H.rows, g = (n - 1) / 2;
    // reversed order: position a is coordinate n-1-a
    BMat Hr(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) Hr(a, b) = H(n - 1 - a, n - 1 - b);
    // Hr = R^t R, R upper triangular
    BMat R(n, n);
    for (int j = 0; j < n; ++j) {
        Ball s = Hr(j, j);
        for (int l = 0; l < j; ++l) s -= R(l, j) * R(l, j);
        if (!s.is_positive()) throw Error(ErrorKind::PrecisionExhausted, "inner product not certified positive");
        R(j, j) = sqrt(s);
        for (int c = j + 1; c < n; ++c) {
            Ball t = Hr(j, c);
            for (int l = 0; l < j; ++l) t -= R(l, j) * R(l, c);
            R(j, c) = t / R(j, j);
        }
    }
    CuspCoordinates cc;
    cc.n = BMat(n, n);
    for (int a = 0; a < n; ++a) {
        cc.ell.push_back(R(a, a));
        for (int b = 0; b < n; ++b) cc.n(a, b) = (b < a) ? Ball(0) : R(a, b) / R(a, a);
    }
    for (int i = 0; i < g; ++i) cc.t.push_back(Ball(1) / cc.ell[i]);
    return cc;
}

SiegelReduction siegel_reduce(const BMat& H) {
    int n = H.rows, g = (n - 1) / 2;
    QMat J = J_matrix(n);
    std::vector<ZVec> flag;
    QMat span(n, 0);
    auto to_qv = [](const ZVec& v) { return QVec(v.begin(), v.end()); };
    double r2 = shortest_vector(H).length.hi();
    r2 *= r2;
    while ((int)flag.size() < g) {
        auto vs = short_vectors(H, r2);
        std::optional<std::pair<Ball, ZVec>> best;
        for (auto& v : vs) {
            QVec q = to_qv(v);
            if (bilinear(J, q, q) != 0) continue;
            bool orth = true;
            for (auto& w : flag) orth = orth && bilinear(J, q, to_qv(w)) == 0;
            if (!orth) continue;
            if (rank(hstack(span, QMat(n, 1, q))) != (int)flag.size() + 1) continue;
            Ball l = quad(H, v, v);
            if (!best || l.mid_d() < best->first.mid_d() || (overlaps(l, best->first) && v < best->second))
                best = std::make_pair(l, v);
        }
        if (!best) {
            r2 *= 4;
            if (!(r2 < 1e300)) throw Error(ErrorKind::PrecisionExhausted, "no isotropic vector found");
            continue;
        }
        flag.push_back(best->second);
        span = hstack(span, QMat(n, 1, to_qv(best->second)));
    }
    // complete to a full flag with F_{n-i} = F_i^perp
    QMat F = span;
    for (int j = g + 1; j <= n; ++j) {
        QMat prefix = column_block(F, 0, n - j);
        QMat perp = (n - j == 0) ? QMat::identity(n) : nullspace(prefix.transpose() * J);
        for (int c = 0; c < perp.cols; ++c) {
            QMat cand = hstack(F, column_block(perp, c, c + 1));
            if (rank(cand) == F.cols + 1) {
                F = cand;
                break;
            }
        }
    }
    SiegelReduction sr;
    sr.gamma = adapted_hyperbolic_basis(F);
    BMat Gb = BMat::from(sr.gamma);
    sr.H = Gb.transpose() * H * Gb;
    sr.cusp = cusp_coordinates(sr.H);
    return sr;
}

// ---------------------------------------------------------------------------
// Flag profile

FlagProfile flag_profile(const IntPoly& f, const QMat& Mprime) {
    int n = f.deg(), g = f.genus();
    QMat X = mulx_matrix(f), G = tau_gram(f, RatPoly{1});
    QMat Binv = inverse(Mprime);
    if (!is_integral(Binv * X * Mprime)) throw Error(ErrorKind::NotStable, "lattice is not stable under x");
    QMat Gm = Mprime.transpose() * G * Mprime;
    if (!is_integral(Gm) || abs(det(Gm)) != 1) throw Error(ErrorKind::NotUnimodular, "lattice is not unimodular");
    Int d = denominator(Mprime);
    // rows = basis vectors, columns in decreasing degree
    ZMat A(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) A(r, c) = Rat(Mprime(n - 1 - c, r) * d).get_num();
    ZMat H = hnf_rows(A).H;
    FlagProfile fp;
    fp.n.assign(n, Rat(0));
    fp.basis = QMat(n, n);
    for (int r = 0; r < n; ++r) {
        int i = n - r; // b_i has degree i - 1
        fp.n[i - 1] = make_rat(d, H(r, r));
        for (int c = 0; c < n; ++c) fp.basis(n - 1 - c, i - 1) = make_rat(H(r, c), d);
    }
    auto fail = [](const char* what) { throw Error(ErrorKind::InvalidInput, std::string("flag profile: ") + what); };
    if (fp.n[g] != 1) fail("middle index is not 1");
    for (int i = 1; i <= n; ++i)
        if (fp.n[i - 1] * fp.n[n - i] != 1) fail("n_i n_{2g+2-i} != 1");
    fp.q_lower = 1;
    for (int i = g + 2; i <= n; ++i) {
        if (fp.n[i - 1].get_den() != 1) fail("upper indices are not integers");
        if (i > g + 2 && fp.n[i - 1].get_num() % fp.n[i - 2].get_num() != 0) fail("divisibility chain broken");
        fp.q_lower *= fp.n[i - 1].get_num();
    }
    return fp;
}

} // namespace hyperred
