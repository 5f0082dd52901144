#include "hyperred/roots.hpp"
#include "hyperred/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>

namespace hyperred {

namespace {

using cld = std::complex<long double>;

// Plain MPFR complex numbers for the polishing stage.
struct Cx {
    Real re, im;
};

void cx_mul(Cx& r, const Cx& a, const Cx& b, Real& t1, Real& t2) {
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    Real nr;
    mpfr_sub(nr.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    r.re = std::move(nr);
}

void cx_div(Cx& r, const Cx& a, const Cx& b) {
    Real d, t1, t2;
    mpfr_sqr(t1.get(), b.re.get(), MPFR_RNDN);
    mpfr_sqr(t2.get(), b.im.get(), MPFR_RNDN);
    mpfr_add(d.get(), t1.get(), t2.get(), MPFR_RNDN);
    Cx bc{b.re, b.im};
    mpfr_neg(bc.im.get(), bc.im.get(), MPFR_RNDN);
    cx_mul(r, a, bc, t1, t2);
    mpfr_div(r.re.get(), r.re.get(), d.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), r.im.get(), d.get(), MPFR_RNDN);
}

bool cx_zero(const Cx& a) { return mpfr_zero_p(a.re.get()) && mpfr_zero_p(a.im.get()); }

long double to_ld(const Rat& q) {
    Real t(80);
    mpfr_set_q(t.get(), q.get_mpq_t(), MPFR_RNDN);
    return mpfr_get_ld(t.get(), MPFR_RNDN);
}

// Monic rational polynomial, coefficients low to high.
std::vector<Rat> monic_coeffs(const RatPoly& f) {
    std::vector<Rat> c = f.c;
    Rat l = f.lc();
    for (auto& v : c) v /= l;
    return c;
}

std::vector<cld> aberth_ld(const std::vector<Rat>& c) {
    int n = (int)c.size() - 1;
    std::vector<long double> a(n + 1);
    for (int i = 0; i <= n; ++i) a[i] = to_ld(c[i]);
    long double R = 0;
    for (int k = 1; k <= n; ++k) R = std::max(R, std::pow(std::fabs(a[n - k]), 1.0L / k));
    R = 2 * R + 1e-30L;
    std::vector<cld> z(n);
    const long double pi = 3.141592653589793238462643383279502884L;
    for (int k = 0; k < n; ++k) z[k] = std::polar(R, 2 * pi * k / n + 0.4L);
    for (int it = 0; it < 2000; ++it) {
        long double worst = 0;
        for (int i = 0; i < n; ++i) {
            cld p = 1, dp = 0;
            for (int k = n - 1; k >= 0; --k) {
                dp = dp * z[i] + p;
                p = p * z[i] + a[k];
            }
            if (p == cld(0)) continue;
            cld N = p / dp;
            cld s = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) s += 1.0L / (z[i] - z[j]);
            cld w = N / (1.0L - N * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / (std::abs(z[i]) + 1e-300L));
        }
        if (worst < 1e-17L) break;
    }
    return z;
}

// Aberth polishing at the current working precision.
void aberth_mp(const std::vector<Rat>& c, std::vector<Cx>& z, int iters) {
    int n = (int)c.size() - 1;
    std::vector<Real> a(n + 1);
    for (int i = 0; i <= n; ++i) mpfr_set_q(a[i].get(), c[i].get_mpq_t(), MPFR_RNDN);
    Real t1, t2;
    for (int it = 0; it < iters; ++it) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            Cx p{Real(), Real()}, dp{Real(), Real()};
            mpfr_set_ui(p.re.get(), 1, MPFR_RNDN);
            for (int k = n - 1; k >= 0; --k) {
                cx_mul(dp, dp, z[i], t1, t2);
                mpfr_add(dp.re.get(), dp.re.get(), p.re.get(), MPFR_RNDN);
                mpfr_add(dp.im.get(), dp.im.get(), p.im.get(), MPFR_RNDN);
                cx_mul(p, p, z[i], t1, t2);
                mpfr_add(p.re.get(), p.re.get(), a[k].get(), MPFR_RNDN);
            }
            if (cx_zero(p) || cx_zero(dp)) continue;
            Cx N{Real(), Real()};
            cx_div(N, p, dp);
            Cx s{Real(), Real()};
            Cx one{Real(), Real()};
            mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Cx d{Real(), Real()};
                mpfr_sub(d.re.get(), z[i].re.get(), z[j].re.get(), MPFR_RNDN);
                mpfr_sub(d.im.get(), z[i].im.get(), z[j].im.get(), MPFR_RNDN);
                if (cx_zero(d)) continue;
                Cx q{Real(), Real()};
                cx_div(q, one, d);
                mpfr_add(s.re.get(), s.re.get(), q.re.get(), MPFR_RNDN);
                mpfr_add(s.im.get(), s.im.get(), q.im.get(), MPFR_RNDN);
            }
            Cx Ns{Real(), Real()};
            cx_mul(Ns, N, s, t1, t2);
            mpfr_ui_sub(Ns.re.get(), 1, Ns.re.get(), MPFR_RNDN);
            mpfr_neg(Ns.im.get(), Ns.im.get(), MPFR_RNDN);
            if (cx_zero(Ns)) continue;
            Cx w{Real(), Real()};
            cx_div(w, N, Ns);
            if (!mpfr_number_p(w.re.get()) || !mpfr_number_p(w.im.get())) continue;
            mpfr_sub(z[i].re.get(), z[i].re.get(), w.re.get(), MPFR_RNDN);
            mpfr_sub(z[i].im.get(), z[i].im.get(), w.im.get(), MPFR_RNDN);
            moved = true;
        }
        if (!moved) break;
    }
}

void raise_prec(std::vector<Cx>& z, long prec) {
    for (auto& v : z) {
        mpfr_prec_round(v.re.get(), prec, MPFR_RNDN);
        mpfr_prec_round(v.im.get(), prec, MPFR_RNDN);
    }
}

CBall cx_ball(const Cx& z) {
    CBall b;
    b.re = Ball::from_mid_rad(z.re, Real(64));
    b.im = Ball::from_mid_rad(z.im, Real(64));
    return b;
}

CBall eval_coeffs(const std::vector<Ball>& a, const CBall& z) {
    CBall r;
    for (int k = (int)a.size() - 1; k >= 0; --k) r = r * z + CBall(a[k]);
    return r;
}

struct Disks {
    std::vector<Cx> z;
    std::vector<Ball> rho; // rigorous radii (upper bound = rho.upper())
};

// Smith's inclusion: every root lies in the union of the disks
// |x - z_i| <= n |f(z_i) / prod_{j != i}(z_i - z_j)|, components counted with multiplicity.
Disks smith_disks(const std::vector<Rat>& c, const std::vector<Cx>& z) {
    int n = (int)c.size() - 1;
    std::vector<Ball> a;
    for (auto& v : c) a.emplace_back(v);
    std::vector<CBall> zb;
    for (auto& v : z) zb.push_back(cx_ball(v));
    Disks d;
    d.z = z;
    for (int i = 0; i < n; ++i) {
        CBall num = eval_coeffs(a, zb[i]);
        CBall den(Ball(1));
        for (int j = 0; j < n; ++j)
            if (j != i) den *= zb[i] - zb[j];
        Ball r = abs(num) * Ball(n);
        Ball dd = abs(den);
        if (dd.contains_zero())
            d.rho.push_back(Ball::from_double(1e300) * Ball::from_double(1e300));
        else
            d.rho.push_back(r / dd);
    }
    return d;
}

Ball cx_dist(const Cx& a, const Cx& b) {
    CBall x = cx_ball(a), y = cx_ball(b);
    return abs(x - y);
}

Real up(const Ball& b) { return b.upper(); }

Real ld_to_real(long double v) {
    Real r;
    mpfr_set_ld(r.get(), v, MPFR_RNDN);
    return r;
}

std::vector<Cx> initial(const std::vector<Rat>& c) {
    std::vector<Cx> z;
    for (auto& v : aberth_ld(c)) z.push_back(Cx{ld_to_real(v.real()), ld_to_real(v.imag())});
    // keep approximations pairwise distinct
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (mpfr_equal_p(z[i].re.get(), z[j].re.get()) && mpfr_equal_p(z[i].im.get(), z[j].im.get())) {
                Real eps;
                mpfr_set_d(eps.get(), 1e-12 * (double)(i + 1), MPFR_RNDN);
                mpfr_add(z[i].im.get(), z[i].im.get(), eps.get(), MPFR_RNDN);
            }
    return z;
}

CertifiedRoots certify(const RatPoly& f, double target_radius) {
    if (f.deg() < 1) throw Error(ErrorKind::InvalidInput, "constant polynomial has no roots");
    if (discriminant(f) == 0) throw Error(ErrorKind::RepeatedRoot, "repeated root: " + to_expr(f));
    std::vector<Rat> c = monic_coeffs(f);
    int n = f.deg();
    long prec = std::max(working_prec(), 128L);
    PrecGuard guard(prec);
    std::vector<Cx> z = initial(c);
    if (target_radius <= 0) {
        double m = 0;
        for (auto& v : z) m = std::max(m, std::hypot(v.re.to_double(), v.im.to_double()));
        target_radius = std::ldexp(1.0 + m, -64);
    }
    Real target(64);
    mpfr_set_d(target.get(), target_radius, MPFR_RNDD);
    for (;;) {
        set_working_prec(prec);
        raise_prec(z, prec);
        aberth_mp(c, z, 6 + (int)std::log2((double)prec));
        Disks d = smith_disks(c, z);
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            if (mpfr_cmp(up(d.rho[i]).get(), target.get()) > 0) ok = false;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < i && ok; ++j) {
                Ball gap = cx_dist(z[i], z[j]);
                if (!certainly_lt(d.rho[i] + d.rho[j], gap)) ok = false;
            }
        CertifiedRoots out;
        if (ok) {
            out.prec = prec;
            out.conj.assign(n, -1);
            out.real.assign(n, false);
            for (int i = 0; i < n && ok; ++i) {
                Cx zc{z[i].re, z[i].im};
                mpfr_neg(zc.im.get(), zc.im.get(), MPFR_RNDN);
                int hit = -1, hits = 0;
                for (int j = 0; j < n; ++j) {
                    Ball gap = cx_dist(zc, z[j]);
                    if (!certainly_lt(d.rho[i] + d.rho[j], gap)) {
                        hit = j;
                        ++hits;
                    }
                }
                if (hits != 1) ok = false;
                out.conj[i] = hit;
                out.real[i] = (hit == i);
            }
            for (int i = 0; i < n && ok; ++i)
                if (out.conj[out.conj[i]] != i) ok = false;
        }
        if (ok) {
            for (int i = 0; i < n; ++i) {
                RootDisk r{z[i].re, z[i].im, up(d.rho[i])};
                if (out.real[i]) mpfr_set_zero(r.im.get(), 1);
                mpfr_prec_round(r.radius.get(), 64, MPFR_RNDU);
                out.roots.push_back(std::move(r));
            }
            return out;
        }
        if (prec >= kMaxPrec) throw Error(ErrorKind::PrecisionExhausted, "could not isolate roots of " + to_expr(f));
        prec = std::min(prec * 2, kMaxPrec);
    }
}

} // namespace

CBall RootDisk::ball() const {
    CBall b;
    b.re = Ball::from_mid_rad(re, radius);
    b.im = Ball::from_mid_rad(im, radius);
    return b;
}

double CertifiedRoots::max_radius() const {
    double m = 0;
    for (auto& r : roots) m = std::max(m, mpfr_get_d(r.radius.get(), MPFR_RNDU));
    return m;
}

CertifiedRoots complex_roots(const RatPoly& f, double target_radius) { return certify(f, target_radius); }

CertifiedRoots complex_roots(const IntPoly& f, double target_radius) { return certify(f.to_rat(), target_radius); }

Ball ht1(const IntPoly& f) {
    RatPoly fr = f.to_rat();
    std::vector<Rat> c = monic_coeffs(fr);
    int n = fr.deg();
    if (std::all_of(c.begin(), c.end() - 1, [](const Rat& v) { return v == 0; })) return Ball(0);
    if (discriminant(fr) != 0) {
        CertifiedRoots r = certify(fr, 0);
        Ball m(0);
        for (auto& d : r.roots) m = max(m, abs(d.ball()));
        return m;
    }
    long prec = std::max(working_prec(), 128L);
    PrecGuard guard(prec);
    std::vector<Cx> z = initial(c);
    aberth_mp(c, z, 12);
    Disks d = smith_disks(c, z);
    // connected components of the union of disks
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    std::function<int(int)> find = [&](int i) { return comp[i] == i ? i : comp[i] = find(comp[i]); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (!certainly_lt(d.rho[i] + d.rho[j], cx_dist(z[i], z[j]))) comp[find(i)] = find(j);
    Real lo(64), hi(64);
    mpfr_set_zero(lo.get(), 1);
    for (int root = 0; root < n; ++root) {
        if (find(root) != root) continue;
        Real cmin(64);
        mpfr_set_inf(cmin.get(), 1);
        for (int i = 0; i < n; ++i) {
            if (find(i) != root) continue;
            Ball m = abs(cx_ball(z[i]));
            Real l(64);
            mpfr_sub(l.get(), m.lower().get(), up(d.rho[i]).get(), MPFR_RNDD);
            mpfr_min(cmin.get(), cmin.get(), l.get(), MPFR_RNDD);
            Real h(64);
            mpfr_add(h.get(), m.upper().get(), up(d.rho[i]).get(), MPFR_RNDU);
            mpfr_max(hi.get(), hi.get(), h.get(), MPFR_RNDU);
        }
        mpfr_max(lo.get(), lo.get(), cmin.get(), MPFR_RNDD);
    }
    if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
    Ball a = Ball::from_mid_rad(lo, Real(64)), b = Ball::from_mid_rad(hi, Real(64));
    return union_hull(a, b);
}

Ball height(const RatPoly& f) {
    int n = f.deg();
    Ball m(0);
    for (int i = 1; i <= n; ++i) {
        Rat a = abs(f.coeff(n - i));
        if (a == 0) continue;
        m = max(m, pow(Ball(a), make_rat(1, i)));
    }
    return m;
}

Ball height(const IntPoly& f) { return height(f.to_rat()); }

Ball min_root_gap(const CertifiedRoots& r) {
    int n = (int)r.roots.size();
    Ball best;
    bool first = true;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            Ball d = abs(r.roots[i].ball() - r.roots[j].ball());
            best = first ? d : min(best, d);
            first = false;
        }
    return best;
}

Ball min_root_gap(const IntPoly& f) { return min_root_gap(complex_roots(f)); }

CBall eval(const RatPoly& p, const CBall& z) {
    CBall r;
    for (int k = p.deg(); k >= 0; --k) r = r * z + CBall(Ball(p.c[k]));
    return r;
}

CBall eval(const IntPoly& p, const CBall& z) {
    CBall r;
    for (int k = p.deg(); k >= 0; --k) r = r * z + CBall(Ball(p.c[k]));
    return r;
}

} // namespace hyperred
