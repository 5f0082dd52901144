#include "hyperred/arith.hpp"
#include "hyperred/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace hyperred {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RepeatedRoot: return "RepeatedRoot";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotSplit: return "NotSplit";
    case ErrorKind::BadFlag: return "BadFlag";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::NoSplit: return "NoSplit";
    case ErrorKind::InvalidTriple: return "InvalidTriple";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::FilterNotSatisfied: return "FilterNotSatisfied";
    case ErrorKind::NotApplicable: return "NotApplicable";
    }
    return "Error";
}

int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::InsufficientPrecision:
        return 2;
    default:
        return 3;
    }
}

Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

long valuation(const Int& n, const Int& p) {
    if (n == 0) return kInfVal;
    Int t;
    return (long)mpz_remove(t.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

long valuation(const Rat& q, const Int& p) {
    if (q == 0) return kInfVal;
    return valuation(Int(q.get_num()), p) - valuation(Int(q.get_den()), p);
}

bool is_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

bool is_square(const Rat& q) {
    return q >= 0 && is_square(Int(q.get_num())) && is_square(Int(q.get_den()));
}

Rat parse_rat(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace((unsigned char)c)) s += c;
    auto valid_int = [](const std::string& t) {
        size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        return std::all_of(t.begin() + i, t.end(), [](char c) { return std::isdigit((unsigned char)c); });
    };
    auto strip_plus = [](std::string t) { return (!t.empty() && t[0] == '+') ? t.substr(1) : t; };
    auto slash = s.find('/');
    auto dot = s.find('.');
    if (slash == std::string::npos && dot != std::string::npos) {
        std::string a = s.substr(0, dot), b = s.substr(dot + 1);
        bool neg = !a.empty() && a[0] == '-';
        if (a.empty() || a == "-" || a == "+") a += "0";
        if (b.empty() || !valid_int(a) || !std::all_of(b.begin(), b.end(), [](char c) { return std::isdigit((unsigned char)c); }))
            throw Error(ErrorKind::InvalidInput, "bad rational '" + raw + "'");
        Int den = ipow(Int(10), b.size());
        Rat q = make_rat(Int(strip_plus(a)) * den, den) + make_rat(Int(b), den) * (neg ? -1 : 1);
        return q;
    }
    if (slash == std::string::npos) {
        if (!valid_int(s)) throw Error(ErrorKind::InvalidInput, "bad rational '" + raw + "'");
        return Rat(Int(strip_plus(s)));
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    if (!valid_int(a) || !valid_int(b)) throw Error(ErrorKind::InvalidInput, "bad rational '" + raw + "'");
    Int d(strip_plus(b));
    if (d == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + raw + "'");
    return make_rat(Int(strip_plus(a)), d);
}

std::string to_string(const Rat& q) {
    return q.get_str();
}

std::string to_string(const Int& n) {
    return n.get_str();
}

namespace {

Int rho(const Int& n) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = x - y;
            d = gcd(abs(diff), n);
        }
        if (d != n) return d;
    }
}

void factor_rec(const Int& n, std::vector<Int>& out) {
    if (n == 1) return;
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
        out.push_back(n);
        return;
    }
    Int d = rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

} // namespace

std::vector<std::pair<Int, int>> factor(const Int& n0) {
    Int n = abs(n0);
    std::vector<Int> ps;
    for (unsigned long p = 2; p < 1000 && p * p <= n; ++p) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ps.push_back(Int(p));
            n /= p;
        }
    }
    factor_rec(n, ps);
    std::sort(ps.begin(), ps.end());
    std::vector<std::pair<Int, int>> out;
    for (auto& p : ps) {
        if (!out.empty() && out.back().first == p)
            ++out.back().second;
        else
            out.emplace_back(p, 1);
    }
    return out;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> out;
    if (n == 0) return out;
    for (auto& [p, e] : factor(n)) out.push_back(p);
    return out;
}

Int smod(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

Int invmod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw Error(ErrorKind::InvalidInput, "not invertible mod " + m.get_str());
    return r;
}

double log_abs(const Int& n) {
    long e;
    double d = mpz_get_d_2exp(&e, n.get_mpz_t());
    return std::log(std::fabs(d)) + (double)e * std::log(2.0);
}

} // namespace hyperred
