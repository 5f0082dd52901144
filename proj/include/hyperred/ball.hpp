#pragma once

#include "hyperred/arith.hpp"

#include <mpfr.h>

#include <string>

namespace hyperred {

// Working precision in bits for newly created midpoints. Thread-local; the
// default comes from HYPERRED_PREC_BITS (128 if unset).
long working_prec();
void set_working_prec(long bits);
long default_prec();
constexpr long kMaxPrec = 4096;

class PrecGuard {
public:
    explicit PrecGuard(long bits) : saved_(working_prec()) { set_working_prec(bits); }
    ~PrecGuard() { set_working_prec(saved_); }
    PrecGuard(const PrecGuard&) = delete;
    PrecGuard& operator=(const PrecGuard&) = delete;

private:
    long saved_;
};

class Real {
public:
    Real() { mpfr_init2(v_, working_prec()); mpfr_set_zero(v_, 1); }
    explicit Real(long prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string str(int digits = 12) const;

private:
    mpfr_t v_;
};

// Midpoint-radius real interval: the true value lies in [mid - rad, mid + rad].
class Ball {
public:
    Real mid;
    Real rad; // low precision, rounded upward

    Ball();
    Ball(long v);
    explicit Ball(const Int& v);
    explicit Ball(const Rat& v);
    static Ball from_double(double v); // exact
    static Ball from_mid_rad(const Real& m, const Real& r);

    Real lower() const; // rounded down
    Real upper() const; // rounded up
    double lo() const;
    double hi() const;
    double mid_d() const { return mid.to_double(); }
    double rad_d() const; // rounded up
    bool contains_zero() const;
    bool is_positive() const { return !contains_zero() && mpfr_sgn(mid.get()) > 0; }
    bool is_negative() const { return !contains_zero() && mpfr_sgn(mid.get()) < 0; }
    // relative radius rad / |mid| (inf when mid = 0 and rad > 0)
    double rel_rad() const;
    void add_error(const Real& e);
    void add_error(double e);
    std::string str(int digits = 12) const;

    Ball& operator+=(const Ball& o);
    Ball& operator-=(const Ball& o);
    Ball& operator*=(const Ball& o);
    Ball& operator/=(const Ball& o);
    friend Ball operator+(Ball a, const Ball& b) { return a += b; }
    friend Ball operator-(Ball a, const Ball& b) { return a -= b; }
    friend Ball operator*(Ball a, const Ball& b) { return a *= b; }
    friend Ball operator/(Ball a, const Ball& b) { return a /= b; }
    friend Ball operator-(Ball a);
};

Ball sqrt(const Ball& a);   // a >= 0 assumed for the part of the interval below 0
Ball log(const Ball& a);    // needs a > 0
Ball exp(const Ball& a);
Ball abs(const Ball& a);
Ball pow(const Ball& a, const Rat& e); // a > 0
Ball max(const Ball& a, const Ball& b);
Ball min(const Ball& a, const Ball& b);
Ball union_hull(const Ball& a, const Ball& b);
Ball pi_ball();

// Certified comparisons; false means "not certified".
bool certainly_lt(const Ball& a, const Ball& b);
bool certainly_le(const Ball& a, const Ball& b);
bool overlaps(const Ball& a, const Ball& b);

struct CBall {
    Ball re, im;
    CBall() = default;
    CBall(Ball r) : re(std::move(r)), im(0) {}
    CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}

    CBall& operator+=(const CBall& o);
    CBall& operator-=(const CBall& o);
    CBall& operator*=(const CBall& o);
    CBall& operator/=(const CBall& o);
    friend CBall operator+(CBall a, const CBall& b) { return a += b; }
    friend CBall operator-(CBall a, const CBall& b) { return a -= b; }
    friend CBall operator*(CBall a, const CBall& b) { return a *= b; }
    friend CBall operator/(CBall a, const CBall& b) { return a /= b; }
    friend CBall operator-(CBall a) { return CBall(-a.re, -a.im); }
};

CBall conj(const CBall& z);
Ball abs(const CBall& z);
Ball norm2(const CBall& z); // |z|^2

// 12 significant digits, as used in CSV output
std::string fmt12(double v);

} // namespace hyperred
