#include "hyperred/family.hpp"
#include "hyperred/errors.hpp"
#include "hyperred/orbits.hpp"
#include "hyperred/quadspace.hpp"
#include "hyperred/reduction.hpp"
#include "hyperred/roots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

namespace hyperred {

int thread_count() {
    int hw = (int)std::max(1u, std::thread::hardware_concurrency());
    const char* env = std::getenv("HYPERRED_THREADS");
    if (!env) return hw;
    int t = std::atoi(env);
    return std::clamp(t, 1, hw);
}

namespace {

// Largest integer b with b < X^i.
std::vector<Int> coefficient_bounds(int g, const Rat& X) {
    if (X <= 0) throw Error(ErrorKind::InvalidInput, "X must be positive");
    Int p = X.get_num(), q = X.get_den();
    std::vector<Int> b;
    for (int i = 2; i <= 2 * g + 1; ++i) {
        Int pi = ipow(p, i), qi = ipow(q, i);
        b.push_back((pi - 1) / qi);
    }
    return b;
}

// Odometer over c_2 in [lo, hi] and the remaining coefficients in their boxes.
template <class Fn>
void scan_box(const std::vector<Int>& b, const Int& lo, const Int& hi, Fn&& fn) {
    size_t k = b.size();
    std::vector<Int> c(k);
    for (size_t i = 1; i < k; ++i) c[i] = -b[i];
    for (c[0] = lo; c[0] <= hi; ++c[0]) {
        for (size_t i = 1; i < k; ++i) c[i] = -b[i];
        for (;;) {
            fn(c);
            size_t p = k - 1;
            while (p >= 1 && c[p] == b[p]) {
                c[p] = -b[p];
                --p;
            }
            if (p == 0) break;
            ++c[p];
        }
    }
}

} // namespace

void for_each_family(int g, const Rat& X, const std::function<void(const IntPoly&)>& fn) {
    auto b = coefficient_bounds(g, X);
    scan_box(b, -b[0], b[0], [&](const std::vector<Int>& c) {
        IntPoly f = IntPoly::family(c);
        if (has_nonzero_discriminant(f)) fn(f);
    });
}

std::vector<IntPoly> enumerate_family(int g, const Rat& X) {
    std::vector<IntPoly> out;
    for_each_family(g, X, [&](const IntPoly& f) { out.push_back(f); });
    return out;
}

FamilyCount count_family(int g, const Rat& X, bool cross_check) {
    auto b = coefficient_bounds(g, X);
    FamilyCount fc;
    fc.boxes = 1;
    for (auto& x : b) fc.boxes *= 2 * x + 1;
    int T = thread_count();
    std::vector<Int> cnt(T, Int(0)), zero(T, Int(0));
    auto work = [&](int t) {
        // c_2 values t, t + T, ... offset from -b_2
        for (Int c2 = -b[0] + t; c2 <= b[0]; c2 += T) {
            scan_box(b, c2, c2, [&](const std::vector<Int>& c) {
                IntPoly f = IntPoly::family(c);
                if (has_nonzero_discriminant(f)) ++cnt[t];
                if (cross_check && discriminant(f) == 0) ++zero[t];
            });
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < T; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();
    fc.count = 0;
    fc.zero_disc = 0;
    for (int t = 0; t < T; ++t) {
        fc.count += cnt[t];
        fc.zero_disc += zero[t];
    }
    return fc;
}

IntPoly random_family_member(int g, const Rat& X, std::mt19937_64& rng) {
    auto b = coefficient_bounds(g, X);
    for (auto& x : b)
        if (!x.fits_slong_p() || x > Int(1L << 61)) throw Error(ErrorKind::InvalidInput, "X too large for sampling");
    for (int tries = 0; tries < 1000000; ++tries) {
        std::vector<Int> c;
        for (auto& x : b) {
            long B = x.get_si();
            c.emplace_back(std::uniform_int_distribution<long>(-B, B)(rng));
        }
        IntPoly f = IntPoly::family(c);
        if (has_nonzero_discriminant(f)) return f;
    }
    throw Error(ErrorKind::InvalidInput, "family is empty");
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    default: return "unknown";
    }
}

Verdict filter_m_delta1(const IntPoly& f, double delta, const Rat& X) {
    if (!has_nonzero_discriminant(f)) throw Error(ErrorKind::RepeatedRoot, "discriminant is zero");
    Rat e = Rat(1) - Rat(delta);
    for (long p = std::max(working_prec(), 128L); p <= kMaxPrec; p *= 2) {
        PrecGuard guard(p);
        auto roots = complex_roots(f, std::ldexp(1.0, -(int)std::min(p - 16, 1000L)));
        Ball gap = min_root_gap(roots);
        Ball th = pow(Ball(X), e);
        if (certainly_lt(th, gap)) return Verdict::True;
        if (certainly_le(gap, th)) return Verdict::False;
    }
    return Verdict::Unknown;
}

Ball norm_bound_constant(int g, int m) {
    Int v = Int((m + 1) * (2 * g + 1)) * ipow(Int(2), m + 2 * g * (2 * g - 1));
    return log(Ball(v)) / Ball(2);
}

NormBoundReport norm_bound_check(const IntPoly& f, const RatPoly& U, double delta, const Rat& X) {
    int g = f.genus(), m = U.deg();
    auto reject = [](const std::string& w) { throw Error(ErrorKind::FilterNotSatisfied, w); };
    if (m < 1 || m > g || !U.is_monic()) reject("U must be monic of degree 1..g");
    if (!height_less_than(f, X)) reject("Ht(f) >= X");
    if (resultant(U, f.to_rat()) == 0) reject("U shares a root with f");
    if (filter_m_delta1(f, delta, X) != Verdict::True) reject("root gaps not certified above X^(1-delta)");
    NormBoundReport r;
    r.m = m;
    r.lhs = log(covariant_norm_of_U(f, U)) / Ball(2);
    Rat mx = 1;
    for (int i = 0; i < m; ++i) mx = std::max(mx, Rat(abs(U.coeff(i))));
    Rat ex = Rat(m - 2 * g) + Rat(delta) * Rat(g * (2 * g + 1));
    r.rhs = Ball(ex) / Ball(2) * log(Ball(X)) + log(Ball(mx)) / Ball(2) + norm_bound_constant(g, m);
    r.margin = (r.rhs - r.lhs).mid_d();
    r.holds = certainly_le(r.lhs, r.rhs);
    return r;
}

DoublingReport doubling_check(const JacobianPoint& P) {
    int m = P.t.U.deg();
    if (m == 0) throw Error(ErrorKind::NotApplicable, "identity");
    JacobianPoint D2 = cantor_add(P, P);
    if (D2.is_identity()) throw Error(ErrorKind::NotApplicable, "2D is trivial");
    DoublingReport r;
    r.m = m;
    r.divisor_doubling = D2.t.U == P.t.U * P.t.U;
    if (!r.divisor_doubling && D2.t.U.deg() != m)
        throw Error(ErrorKind::NotApplicable, "2D is neither the doubled divisor nor of the same Mumford degree");
    r.H_D = naive_height_int(P.t.U);
    r.H_2D = naive_height_int(D2.t.U);
    r.h_D = log_abs(r.H_D);
    r.h_2D = log_abs(r.H_2D);
    r.holds = r.H_2D * ipow(Int(2), 6 * m - 2) >= r.H_D * r.H_D;
    return r;
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

std::string fmt_rat(const Rat& q) { return to_string(q); }

} // namespace

std::string HeightGapResult::csv() const {
    std::ostringstream os;
    os << "X,sampled,certified,small,small_certified,fraction,fraction_certified,exhaustive\n";
    for (auto& r : rows)
        os << fmt_rat(r.X) << ',' << r.sampled << ',' << r.certified << ',' << r.small << ',' << r.small_certified << ','
           << fmt12(r.fraction()) << ',' << fmt12(r.fraction_certified()) << ',' << (r.exhaustive ? 1 : 0) << '\n';
    return os.str();
}

std::string HeightGapResult::records_csv() const {
    std::ostringstream os;
    os << "f,ht,ht_rad,m_delta1,small,min_hdagger,witness\n";
    for (auto& r : records)
        os << '"' << format_family(r.f) << "\"," << fmt12(r.ht.mid_d()) << ',' << fmt12(r.ht.rad_d()) << ','
           << verdict_name(r.in_m) << ',' << (r.small ? 1 : 0) << ',' << fmt12(r.min_h) << ",\"" << r.witness << "\"\n";
    return os.str();
}

HeightGapResult height_gap_experiment(const FamilySpec& spec, const std::vector<Rat>& Xs, long samples,
                                      long search_bound) {
    int g = spec.g;
    if (g < 1) throw Error(ErrorKind::InvalidInput, "genus must be positive");
    HeightGapResult res;
    for (const Rat& X : Xs) {
        HeightGapRow row;
        row.X = X;
        auto b = coefficient_bounds(g, X);
        Int boxes = 1;
        for (auto& x : b) boxes *= 2 * x + 1;
        std::vector<IntPoly> fs;
        if (boxes <= samples) {
            fs = enumerate_family(g, X);
            row.exhaustive = true;
        } else {
            std::seed_seq seq{(unsigned)spec.seed, (unsigned)(spec.seed >> 32), (unsigned)X.get_num().get_ui(),
                              (unsigned)X.get_den().get_ui()};
            std::mt19937_64 rng(seq);
            for (long s = 0; s < samples; ++s) fs.push_back(random_family_member(g, X, rng));
        }
        double expo = g - spec.epsilon;
        for (auto& f : fs) {
            HeightGapRecord rec;
            rec.f = f;
            rec.ht = height(f);
            rec.in_m = filter_m_delta1(f, spec.delta, X);
            double loght = std::log(std::max(rec.ht.mid_d(), 1e-300));
            double cutoff = expo * loght;
            long B = search_bound;
            if (expo > 0) B = std::min(B, (long)std::ceil(std::exp(cutoff)) + 1);
            B = std::max(B, 1L);
            if (cutoff > 0) {
                for (auto& P : search_jacobian_points(f, B, 4096)) {
                    double h = h_dagger(P);
                    if (rec.min_h < 0 || h < rec.min_h) {
                        rec.min_h = h;
                        rec.witness = format_triple(P.t);
                    }
                }
                rec.small = rec.min_h >= 0 && rec.min_h < cutoff;
            }
            ++row.sampled;
            if (rec.small) ++row.small;
            if (rec.in_m == Verdict::True) {
                ++row.certified;
                if (rec.small) ++row.small_certified;
            }
            res.records.push_back(std::move(rec));
        }
        res.rows.push_back(row);
    }
    return res;
}

std::string EquidistResult::csv() const {
    std::ostringstream os;
    os << "eps,threshold,below,samples,fraction\n";
    for (size_t i = 0; i < eps.size(); ++i)
        os << fmt12(eps[i]) << ',' << fmt12(scale * eps[i]) << ',' << below[i] << ',' << samples << ',' << fmt12(fraction(i))
           << '\n';
    return os.str();
}

EquidistResult equidistribution_experiment(const FamilySpec& spec, long samples, const std::vector<double>& eps_grid,
                                           long entry_bound, long distinguished_bound) {
    int g = spec.g, n = 2 * g + 1;
    EquidistResult res;
    res.eps = eps_grid;
    res.below.assign(eps_grid.size(), 0);
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<long> d(-entry_bound, entry_bound);
    double c = std::pow(kSiegelConstant, g);
    res.scale = c;
    long cap = 100 * samples + 1000;
    while (res.samples < samples && res.drawn < cap) {
        ++res.drawn;
        QMat T(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; i + j <= n - 1; ++j) {
                T(i, j) = d(rng);
                T(n - 1 - j, n - 1 - i) = T(i, j);
            }
        Rat s = 0;
        for (int i = 0; i < g; ++i) s += T(i, i);
        T(g, g) = -2 * s;
        if (discriminant(charpoly(T)) == 0) {
            ++res.rejected_repeated;
            continue;
        }
        if (find_distinguished_subspace(T, std::nullopt, distinguished_bound)) {
            ++res.rejected_distinguished;
            continue;
        }
        PrecGuard guard(spec.precision > 0 ? spec.precision : working_prec());
        BMat H = reduction_covariant(T).H;
        double len = shortest_vector(H).length.mid_d();
        auto sr = siegel_reduce(H);
        res.lengths.push_back(len);
        res.t1.push_back(sr.cusp.t[0].mid_d());
        for (size_t i = 0; i < eps_grid.size(); ++i)
            if (len < c * eps_grid[i]) ++res.below[i];
        ++res.samples;
    }
    return res;
}

} // namespace hyperred
