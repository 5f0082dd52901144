#include "hyperred/ball.hpp"
#include "hyperred/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace hyperred {

namespace {

thread_local long tl_prec = 0;
constexpr long kRadPrec = 64;

// Upper bound for one RNDN rounding error of m.
Real ulp_bound(const Real& m) {
    Real e(kRadPrec);
    if (mpfr_zero_p(m.get()) || !mpfr_number_p(m.get())) return e;
    mpfr_set_ui_2exp(e.get(), 1, mpfr_get_exp(m.get()) - m.prec(), MPFR_RNDU);
    return e;
}

Real abs_up(const Real& m) {
    Real r(kRadPrec);
    mpfr_abs(r.get(), m.get(), MPFR_RNDU);
    return r;
}

Real abs_down(const Real& m) {
    Real r(kRadPrec);
    mpfr_abs(r.get(), m.get(), MPFR_RNDD);
    return r;
}

Ball from_endpoints(const Real& lo, const Real& hi) {
    Ball b;
    mpfr_add(b.mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(b.mid.get(), b.mid.get(), 1, MPFR_RNDN);
    Real d1(kRadPrec), d2(kRadPrec);
    mpfr_sub(d1.get(), hi.get(), b.mid.get(), MPFR_RNDU);
    mpfr_sub(d2.get(), b.mid.get(), lo.get(), MPFR_RNDU);
    mpfr_max(b.rad.get(), d1.get(), d2.get(), MPFR_RNDU);
    return b;
}

} // namespace

long default_prec() {
    static const long p = [] {
        const char* s = std::getenv("HYPERRED_PREC_BITS");
        long v = 128;
        if (s && *s) {
            char* end = nullptr;
            long t = std::strtol(s, &end, 10);
            if (end && *end == '\0' && t > 0) v = t;
        }
        return std::clamp(v, 53L, kMaxPrec);
    }();
    return p;
}

long working_prec() { return tl_prec > 0 ? tl_prec : default_prec(); }
void set_working_prec(long bits) { tl_prec = bits; }

std::string Real::str(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Ball::Ball() : mid(), rad(kRadPrec) {}

Ball::Ball(long v) : mid(), rad(kRadPrec) {
    if (mpfr_set_si(mid.get(), v, MPFR_RNDN) != 0) rad = ulp_bound(mid);
}

Ball::Ball(const Int& v) : mid(), rad(kRadPrec) {
    if (mpfr_set_z(mid.get(), v.get_mpz_t(), MPFR_RNDN) != 0) rad = ulp_bound(mid);
}

Ball::Ball(const Rat& v) : mid(), rad(kRadPrec) {
    if (mpfr_set_q(mid.get(), v.get_mpq_t(), MPFR_RNDN) != 0) rad = ulp_bound(mid);
}

Ball Ball::from_double(double v) {
    Ball b;
    mpfr_set_d(b.mid.get(), v, MPFR_RNDN);
    return b;
}

Ball Ball::from_mid_rad(const Real& m, const Real& r) {
    Ball b;
    if (mpfr_set(b.mid.get(), m.get(), MPFR_RNDN) != 0) b.rad = ulp_bound(b.mid);
    mpfr_add(b.rad.get(), b.rad.get(), r.get(), MPFR_RNDU);
    return b;
}

Real Ball::lower() const {
    Real r(mid.prec());
    mpfr_sub(r.get(), mid.get(), rad.get(), MPFR_RNDD);
    return r;
}

Real Ball::upper() const {
    Real r(mid.prec());
    mpfr_add(r.get(), mid.get(), rad.get(), MPFR_RNDU);
    return r;
}

double Ball::lo() const { return mpfr_get_d(lower().get(), MPFR_RNDD); }
double Ball::hi() const { return mpfr_get_d(upper().get(), MPFR_RNDU); }
double Ball::rad_d() const { return mpfr_get_d(rad.get(), MPFR_RNDU); }

bool Ball::contains_zero() const {
    Real a = abs_down(mid);
    return mpfr_cmp(a.get(), rad.get()) <= 0;
}

double Ball::rel_rad() const {
    if (mpfr_zero_p(mid.get())) return mpfr_zero_p(rad.get()) ? 0.0 : std::numeric_limits<double>::infinity();
    Real q(kRadPrec);
    mpfr_div(q.get(), rad.get(), abs_down(mid).get(), MPFR_RNDU);
    return mpfr_get_d(q.get(), MPFR_RNDU);
}

void Ball::add_error(const Real& e) { mpfr_add(rad.get(), rad.get(), e.get(), MPFR_RNDU); }

void Ball::add_error(double e) {
    Real t(kRadPrec);
    mpfr_set_d(t.get(), std::fabs(e), MPFR_RNDU);
    add_error(t);
}

std::string Ball::str(int digits) const { return mid.str(digits) + " +/- " + Real(rad).str(3); }

Ball& Ball::operator+=(const Ball& o) {
    Real m;
    mpfr_add(m.get(), mid.get(), o.mid.get(), MPFR_RNDN);
    mpfr_add(rad.get(), rad.get(), o.rad.get(), MPFR_RNDU);
    add_error(ulp_bound(m));
    mid = std::move(m);
    return *this;
}

Ball& Ball::operator-=(const Ball& o) {
    Real m;
    mpfr_sub(m.get(), mid.get(), o.mid.get(), MPFR_RNDN);
    mpfr_add(rad.get(), rad.get(), o.rad.get(), MPFR_RNDU);
    add_error(ulp_bound(m));
    mid = std::move(m);
    return *this;
}

Ball& Ball::operator*=(const Ball& o) {
    Real m;
    mpfr_mul(m.get(), mid.get(), o.mid.get(), MPFR_RNDN);
    Real r(kRadPrec), t(kRadPrec);
    mpfr_mul(r.get(), abs_up(mid).get(), o.rad.get(), MPFR_RNDU);
    mpfr_mul(t.get(), abs_up(o.mid).get(), rad.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDU);
    mpfr_mul(t.get(), rad.get(), o.rad.get(), MPFR_RNDU);
    mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDU);
    rad = std::move(r);
    add_error(ulp_bound(m));
    mid = std::move(m);
    return *this;
}

Ball& Ball::operator/=(const Ball& o) {
    if (o.contains_zero()) throw Error(ErrorKind::PrecisionExhausted, "division by a ball containing zero");
    Real m;
    mpfr_div(m.get(), mid.get(), o.mid.get(), MPFR_RNDN);
    Real num(kRadPrec), t(kRadPrec), den(kRadPrec);
    mpfr_mul(num.get(), abs_up(mid).get(), o.rad.get(), MPFR_RNDU);
    mpfr_mul(t.get(), abs_up(o.mid).get(), rad.get(), MPFR_RNDU);
    mpfr_add(num.get(), num.get(), t.get(), MPFR_RNDU);
    Real bm = abs_down(o.mid);
    mpfr_sub(den.get(), bm.get(), o.rad.get(), MPFR_RNDD);
    mpfr_mul(den.get(), den.get(), bm.get(), MPFR_RNDD);
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDU);
    rad = std::move(num);
    add_error(ulp_bound(m));
    mid = std::move(m);
    return *this;
}

Ball operator-(Ball a) {
    mpfr_neg(a.mid.get(), a.mid.get(), MPFR_RNDN);
    return a;
}

Ball sqrt(const Ball& a) {
    Real lo = a.lower();
    if (mpfr_sgn(lo.get()) <= 0) {
        Real hi = a.upper();
        if (mpfr_sgn(hi.get()) < 0) throw Error(ErrorKind::InvalidInput, "sqrt of a negative ball");
        Real s;
        mpfr_sqrt(s.get(), hi.get(), MPFR_RNDU);
        Real z;
        return from_endpoints(z, s);
    }
    Ball r;
    mpfr_sqrt(r.mid.get(), a.mid.get(), MPFR_RNDN);
    Real sl(kRadPrec);
    mpfr_sqrt(sl.get(), lo.get(), MPFR_RNDD);
    mpfr_div(r.rad.get(), a.rad.get(), sl.get(), MPFR_RNDU);
    r.add_error(ulp_bound(r.mid));
    return r;
}

Ball log(const Ball& a) {
    Real lo = a.lower();
    if (mpfr_sgn(lo.get()) <= 0) throw Error(ErrorKind::PrecisionExhausted, "log of a ball touching zero");
    Ball r;
    mpfr_log(r.mid.get(), a.mid.get(), MPFR_RNDN);
    Real l(kRadPrec);
    mpfr_set(l.get(), lo.get(), MPFR_RNDD);
    mpfr_div(r.rad.get(), a.rad.get(), l.get(), MPFR_RNDU);
    r.add_error(ulp_bound(r.mid));
    return r;
}

Ball exp(const Ball& a) {
    Ball r;
    mpfr_exp(r.mid.get(), a.mid.get(), MPFR_RNDN);
    Real eu(kRadPrec);
    mpfr_exp(eu.get(), a.upper().get(), MPFR_RNDU);
    mpfr_mul(r.rad.get(), eu.get(), a.rad.get(), MPFR_RNDU);
    r.add_error(ulp_bound(r.mid));
    return r;
}

Ball abs(const Ball& a) {
    if (a.contains_zero()) {
        Real hi(kRadPrec);
        mpfr_add(hi.get(), abs_up(a.mid).get(), a.rad.get(), MPFR_RNDU);
        Real z;
        return from_endpoints(z, hi);
    }
    Ball r = a;
    mpfr_abs(r.mid.get(), r.mid.get(), MPFR_RNDN);
    return r;
}

Ball pow(const Ball& a, const Rat& e) {
    if (e == 0) return Ball(1);
    return exp(Ball(e) * log(a));
}

Ball max(const Ball& a, const Ball& b) {
    Real lo, hi;
    Real la = a.lower(), lb = b.lower(), ua = a.upper(), ub = b.upper();
    mpfr_max(lo.get(), la.get(), lb.get(), MPFR_RNDD);
    mpfr_max(hi.get(), ua.get(), ub.get(), MPFR_RNDU);
    return from_endpoints(lo, hi);
}

Ball min(const Ball& a, const Ball& b) {
    Real lo, hi;
    Real la = a.lower(), lb = b.lower(), ua = a.upper(), ub = b.upper();
    mpfr_min(lo.get(), la.get(), lb.get(), MPFR_RNDD);
    mpfr_min(hi.get(), ua.get(), ub.get(), MPFR_RNDU);
    return from_endpoints(lo, hi);
}

Ball union_hull(const Ball& a, const Ball& b) {
    Real lo, hi;
    Real la = a.lower(), lb = b.lower(), ua = a.upper(), ub = b.upper();
    mpfr_min(lo.get(), la.get(), lb.get(), MPFR_RNDD);
    mpfr_max(hi.get(), ua.get(), ub.get(), MPFR_RNDU);
    return from_endpoints(lo, hi);
}

Ball pi_ball() {
    Ball r;
    mpfr_const_pi(r.mid.get(), MPFR_RNDN);
    r.rad = ulp_bound(r.mid);
    return r;
}

bool certainly_lt(const Ball& a, const Ball& b) { return mpfr_cmp(a.upper().get(), b.lower().get()) < 0; }
bool certainly_le(const Ball& a, const Ball& b) { return mpfr_cmp(a.upper().get(), b.lower().get()) <= 0; }
bool overlaps(const Ball& a, const Ball& b) { return !certainly_lt(a, b) && !certainly_lt(b, a); }

CBall& CBall::operator+=(const CBall& o) {
    re += o.re;
    im += o.im;
    return *this;
}

CBall& CBall::operator-=(const CBall& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

CBall& CBall::operator*=(const CBall& o) {
    Ball r = re * o.re - im * o.im;
    Ball i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

CBall& CBall::operator/=(const CBall& o) {
    Ball n = norm2(o);
    CBall t = *this * conj(o);
    re = t.re / n;
    im = t.im / n;
    return *this;
}

CBall conj(const CBall& z) { return CBall(z.re, -z.im); }
Ball norm2(const CBall& z) { return z.re * z.re + z.im * z.im; }
Ball abs(const CBall& z) { return sqrt(norm2(z)); }

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace hyperred
