// One line per acceptance criterion; exit status 1 when any fails.

#include "hyperred/errors.hpp"
#include "hyperred/family.hpp"
#include "hyperred/orbits.hpp"
#include "hyperred/quadspace.hpp"
#include "hyperred/reduction.hpp"
#include "hyperred/roots.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace hyperred;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// differences taken in ball arithmetic, so agreement below double resolution still shows
double rel_err(const Ball& a, const Ball& b) { return std::fabs(((a - b) / b).mid_d()); }

double max_rel_diff(const BMat& a, const BMat& b) {
    double m = 0, s = 0;
    for (size_t i = 0; i < a.a.size(); ++i) {
        m = std::max(m, std::fabs((a.a[i] - b.a[i]).mid_d()));
        s = std::max(s, std::fabs(a.a[i].mid_d()));
    }
    return m / s;
}

struct Case {
    IntPoly f;
    MumfordTriple t;
};

// identity plus searched points on the first curves of small families
std::vector<Case> construction_cases(int g, size_t want) {
    std::vector<Case> out;
    std::mt19937_64 rng(100 + g);
    Rat X = g == 1 ? 6 : 3;
    while (out.size() < want) {
        IntPoly f = random_family_member(g, X, rng);
        out.push_back({f, identity_triple(f)});
        auto pts = search_jacobian_points(f, g == 1 ? 30 : 10, 6);
        for (size_t i = 0; i < pts.size() && i < 3 && out.size() < want; ++i) out.push_back({f, pts[i].t});
    }
    return out;
}

std::vector<Case> g1_cases, g2_cases;

Outcome criterion1() {
    g1_cases = construction_cases(1, 110);
    g2_cases = construction_cases(2, 30);
    long ok = 0, total = 0, nonid = 0;
    std::string first_bad;
    for (auto* cs : {&g1_cases, &g2_cases})
        for (auto& c : *cs) {
            ++total;
            if (c.t.m() > 0) ++nonid;
            try {
                auto rep = integral_orbit_rep(c.f, c.t);
                auto r = verify_orbit(to_q(rep.T), c.f);
                Rat d = det(to_q(rep.lattice.gram));
                if (r.ok() && (d == 1 || d == -1)) ++ok;
                else if (first_bad.empty()) first_bad = format_family(c.f) + " " + format_triple(c.t);
            } catch (const Error& e) {
                if (first_bad.empty()) first_bad = format_family(c.f) + ": " + e.what();
            }
        }
    std::ostringstream os;
    os << ok << "/" << total << " pairs (" << g1_cases.size() << " at g=1, " << g2_cases.size() << " at g=2, " << nonid
       << " non-identity)";
    if (!first_bad.empty()) os << "; first failure " << first_bad;
    return {ok == total, os.str()};
}

Outcome criterion2() {
    long n = 0, bad = 0;
    double worst = 0;
    for (auto* cs : {&g1_cases, &g2_cases})
        for (auto& c : *cs) {
            if (resultant(c.t.U, c.f.to_rat()) == 0) continue;
            auto rep = integral_orbit_rep(c.f, c.t);
            auto H = reduction_covariant(to_q(rep.T)).H;
            double e = rel_err(quad(H, rep.w, rep.w), Ball(rep.lattice.M) * covariant_norm_of_U(c.f, c.t.U));
            worst = std::max(worst, e);
            ++n;
            if (!(e <= 1e-9)) ++bad;
        }
    std::ostringstream os;
    os << n << " coprime cases, max relative error " << worst;
    return {bad == 0 && n > 0, os.str()};
}

Outcome criterion3() {
    double compat = 0, commute = 0, equi = 0, scale = 0;
    long conj = 0;
    std::mt19937_64 rng(303);
    std::vector<Case*> cases;
    for (auto* cs : {&g1_cases, &g2_cases})
        for (auto& c : *cs) cases.push_back(&c);
    for (size_t i = 0; i < cases.size(); ++i) {
        auto rep = integral_orbit_rep(cases[i]->f, cases[i]->t);
        QMat T = to_q(rep.T);
        auto cg = reduction_covariant(T);
        compat = std::max(compat, cg.compat_residual);
        commute = std::max(commute, cg.commute_residual);
        for (long lam : {2L, -3L}) {
            QMat S = T;
            for (auto& x : S.a) x *= lam;
            scale = std::max(scale, max_rel_diff(reduction_covariant(S).H, cg.H));
        }
        if (conj < 100) {
            int n = T.rows;
            ZMat gm = oracle::random_gamma(n, rng, 6);
            QMat gq = to_q(gm), gi = inverse(gq);
            auto H2 = reduction_covariant(gq * T * gi).H;
            BMat Gi = BMat::from(gi);
            equi = std::max(equi, max_rel_diff(H2, Gi.transpose() * cg.H * Gi));
            ++conj;
        }
    }
    std::ostringstream os;
    os << cases.size() << " operators: compat " << compat << ", commute " << commute << "; " << conj
       << " conjugations: equivariance " << equi << "; scale (2T, -3T) " << scale;
    bool ok = compat <= 1e-9 && commute <= 1e-9 && equi <= 1e-9 && scale <= 1e-9 && conj >= 100;
    return {ok, os.str()};
}

Outcome criterion4() {
    std::mt19937_64 rng(404);
    long n = 0, bad = 0, uncertain = 0;
    const Rat Xs[] = {2, 5, 20, 100};
    for (int s = 0; s < 10000; ++s) {
        int g = 1 + s % 3;
        IntPoly f = random_family_member(g, Xs[(s / 3) % 4], rng);
        Ball ht = height(f), h1 = ht1(f);
        Ball lo = h1 / Ball(2), hi = Ball(ipow(Int(2), 2 * g + 1)) * h1;
        ++n;
        if (certainly_lt(ht, lo) || certainly_lt(hi, ht)) ++bad;
        else if (!certainly_le(lo, ht) || !certainly_le(ht, hi)) ++uncertain;
    }
    std::ostringstream os;
    os << n << " polynomials (g=1,2,3): " << bad << " violations, " << uncertain << " not certified";
    return {bad == 0 && uncertain == 0, os.str()};
}

Outcome criterion5() {
    std::mt19937_64 rng(505);
    long n = 0;
    double form = 0, sym = 0;
    for (int s = 0; s < 200; ++s) {
        int g = 1 + s % 2;
        IntPoly f = random_family_member(g, g == 1 ? 30 : 8, rng);
        int deg = f.deg();
        std::vector<Ball> lhs(deg + 1);
        for (int m = 1; m <= deg; ++m) {
            auto [l, r] = covolume_formula_check(f, m);
            form = std::max(form, std::fabs((l - r).mid_d()) / std::max(1.0, std::fabs(r.mid_d())));
            lhs[m] = l;
        }
        for (int m = 1; m < deg; ++m)
            sym = std::max(sym, std::fabs((lhs[m] - lhs[deg - m]).mid_d()) /
                                    std::max(1.0, std::fabs(lhs[m].mid_d())));
        ++n;
    }
    std::ostringstream os;
    os << n << " polynomials, all m: formula " << form << ", symmetry " << sym << " (relative, floor 1)";
    return {form <= 1e-9 && sym <= 1e-9, os.str()};
}

Outcome criterion6() {
    std::mt19937_64 rng(606);
    long match3 = 0, match5 = 0;
    for (int t = 0; t < 150; ++t) {
        int k = t < 100 ? 3 : 5;
        auto G = oracle::random_gram(k, rng);
        auto p = canonical_plot(BMat::from_doubles(k, k, G));
        auto mins = oracle::plot_minima(G, k, k == 3 ? 2 : 1, k / 2);
        bool ok = p.vertices == oracle::hull_corners(mins);
        for (int i = 0; i <= k; ++i) ok = ok && std::fabs(p.log_covol[i].mid_d() - mins[i]) <= 1e-9 * (1 + std::fabs(mins[i]));
        if (ok) ++(k == 3 ? match3 : match5);
    }
    std::uniform_int_distribution<long> d(-3, 3);
    long pairs = 0, viol = 0;
    while (pairs < 500) {
        int k = 3 + pairs % 3;
        BMat Q = BMat::from_doubles(k, k, oracle::random_gram(k, rng));
        auto rnd = [&](int r) {
            ZMat m(k, r);
            for (auto& x : m.a) x = d(rng);
            return m;
        };
        ZMat A = rnd(1 + pairs % (k - 1)), B = rnd(1 + (pairs / 3) % (k - 1));
        if (rank(to_q(A)) < A.cols || rank(to_q(B)) < B.cols) continue;
        ZMat I = sublattice_intersection(A, B);
        ZMat S = to_z(lattice_basis(hstack(to_q(A), to_q(B))));
        double lhs = log_covolume_raw(I, Q).mid_d() + log_covolume_raw(S, Q).mid_d();
        double rhs = log_covolume_raw(A, Q).mid_d() + log_covolume_raw(B, Q).mid_d();
        if (lhs > rhs + 1e-9) ++viol;
        ++pairs;
    }
    std::ostringstream os;
    os << "rank 3: " << match3 << "/100, rank 5: " << match5 << "/50 vertex sets and minima match; submodularity "
       << viol << " violations in " << pairs << " pairs";
    return {match3 == 100 && match5 == 50 && viol == 0, os.str()};
}

Outcome criterion7() {
    const int g = 1;
    const double delta = 0.05;
    const int N = 2 * g * (2 * g + 1);
    std::mt19937_64 rng(707);
    long found = 0, exact = 0, tried = 0;
    std::string bad;
    while (found < 20 && tried < 200) {
        ++tried;
        // roots x1 < x2 < x3 summing to zero, spread on the scale A
        long A = std::uniform_int_distribution<long>(3000000, 20000000)(rng);
        long x2 = std::uniform_int_distribution<long>(-A / 6, A / 6)(rng);
        long dd = std::uniform_int_distribution<long>(A, 2 * A)(rng);
        Int r2 = x2, r3 = x2 + dd, r1 = -(r2 + r3);
        IntPoly f = IntPoly::family({r1 * r2 + r1 * r3 + r2 * r3, -r1 * r2 * r3});
        Rat X = Int(std::ceil(height(f).hi()));
        // hypotheses, checked explicitly
        if (!(delta < 1.0 / N)) continue;
        if (!(std::log(X.get_d()) > (2 * g + 1) * (4 * g + 1) * std::log(2.0) / (1 - delta * N))) continue;
        if (!certainly_le(height(f), Ball(X))) continue;
        if (!certainly_le(pow(Ball(X), Rat(1) - Rat(delta)), min_root_gap(f))) continue;
        ++found;
        auto H = reduction_covariant(mulx_matrix(f), tau_gram(f, RatPoly{1})).H;
        auto p = canonical_plot(H);
        bool ok = (int)p.vertices.size() == 2 * g + 2;
        for (int i = 1; ok && i <= 2 * g; ++i) {
            const ZMat& L = p.minimizer[i];
            for (int r = i; r < L.rows; ++r)
                for (int c = 0; c < L.cols; ++c) ok = ok && L(r, c) == 0;
        }
        if (ok) ++exact;
        else if (bad.empty()) bad = format_family(f);
    }
    std::ostringstream os;
    os << found << " instances (delta = " << delta << ", X = ceil Ht, hypotheses certified): " << exact
       << " with filtration 0 < <1> < <1,x> < M_1";
    if (!bad.empty()) os << "; first failure " << bad;
    return {found >= 20 && exact == found, os.str()};
}

long zero_disc_g1(long b2, long b3) {
    long n = 0;
    for (long a = 0; 3 * a * a <= b2; ++a)
        if (2 * a * a * a <= b3) n += a == 0 ? 1 : 2;
    return n;
}

Outcome criterion8() {
    std::ostringstream os;
    bool ok = true;
    double prev = 0;
    for (long X : {2L, 4L, 8L, 16L}) {
        auto c = count_family(1, X, X <= 8);
        long b2 = X * X - 1, b3 = X * X * X - 1;
        Int expect = (2 * b2 + 1) * (2 * b3 + 1) - zero_disc_g1(b2, b3);
        double ratio = c.count.get_d() / (4.0 * std::pow(double(X), 5));
        ok = ok && c.count == expect && ratio > prev;
        if (X <= 8) ok = ok && c.zero_disc == zero_disc_g1(b2, b3);
        if (X == 2) ok = ok && c.count == 102;
        if (X == 16) ok = ok && ratio > 0.9;
        os << "X=" << X << ": " << c.count.get_str() << " (ratio " << ratio << ") ";
        prev = ratio;
    }
    return {ok, os.str()};
}

Outcome criterion9() {
    std::mt19937_64 rng(909);
    long nb = 0, nb_fail = 0, nb_recovered = 0, nb_draws = 0;
    double min_margin = INFINITY;
    const double delta = 0.5;
    while (nb < 500 && nb_draws < 20000) {
        ++nb_draws;
        int g = 1 + nb_draws % 2;
        Rat X = g == 1 ? Rat(std::uniform_int_distribution<long>(5, 40)(rng))
                       : Rat(std::uniform_int_distribution<long>(4, 10)(rng));
        IntPoly f = random_family_member(g, X, rng);
        int m = std::uniform_int_distribution<int>(1, g)(rng);
        std::vector<Rat> u(m + 1);
        u[m] = 1;
        std::uniform_int_distribution<long> cd(-400, 400), den(1, 3);
        for (int i = 0; i < m; ++i) u[i] = make_rat(cd(rng), den(rng));
        RatPoly U(u);
        try {
            auto r = norm_bound_check(f, U, delta, X);
            ++nb;
            min_margin = std::min(min_margin, r.margin);
            if (!r.holds) {
                PrecGuard guard(kMaxPrec);
                if (norm_bound_check(f, U, delta, X).holds) ++nb_recovered;
                else ++nb_fail;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::FilterNotSatisfied) throw;
        }
    }

    long nd = 0, nd_fail = 0, nd_divisor = 0, nd_curves = 0;
    for (long s = 0; nd < 500 && s < 5000; ++s) {
        int g = s % 3 == 2 ? 2 : 1;
        IntPoly f = random_family_member(g, g == 1 ? 12 : 4, rng);
        auto pts = search_jacobian_points(f, g == 1 ? 60 : 20, 16);
        if (!pts.empty()) ++nd_curves;
        std::vector<JacobianPoint> ds = pts;
        for (auto& P : pts) ds.push_back(multiply(P, 3));
        for (auto& P : ds) {
            try {
                auto r = doubling_check(P);
                ++nd;
                if (r.divisor_doubling) ++nd_divisor;
                if (!r.holds) ++nd_fail;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NotApplicable) throw;
            }
        }
    }
    std::ostringstream os;
    os << "norm bound: " << nb << " valid samples, " << nb_fail << " failures (" << nb_recovered
       << " recovered at higher precision), min margin " << min_margin << "; doubling: " << nd << " samples on "
       << nd_curves << " curves (" << nd_divisor << " with U(2D) = U(D)^2), " << nd_fail << " failures";
    return {nb >= 500 && nb_fail == 0 && nd >= 500 && nd_fail == 0, os.str()};
}

Outcome criterion10() {
    FamilySpec es;
    es.g = 1;
    es.seed = 1010;
    std::vector<double> grid = {0, 0.125, 0.25, 0.5, 1};
    auto eq = equidistribution_experiment(es, 1000, grid);
    bool mono = eq.below[0] == 0;
    for (size_t i = 1; i < grid.size(); ++i) mono = mono && eq.below[i] >= eq.below[i - 1];
    FamilySpec hs;
    hs.g = 1;
    hs.epsilon = 0.5;
    hs.delta = 0.5;
    hs.seed = 1010;
    auto hg = height_gap_experiment(hs, {5, 10, 20}, 1000, 1000);
    bool dec = true;
    for (size_t i = 1; i < hg.rows.size(); ++i)
        dec = dec && hg.rows[i].fraction_certified() <= hg.rows[i - 1].fraction_certified();
    std::ostringstream os;
    os << "equidist fractions (eps 0,1/8,1/4,1/2,1):";
    for (size_t i = 0; i < grid.size(); ++i) os << " " << eq.fraction(i);
    os << "; height-gap certified fractions (X 5,10,20):";
    for (auto& r : hg.rows) os << " " << r.fraction_certified();
    return {mono && dec, os.str()};
}

} // namespace

int main() {
    std::vector<std::pair<int, std::function<Outcome()>>> all = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},  {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };
    int failed = 0;
    for (auto& [k, fn] : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  %s [%.1fs]\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str(), sec);
        std::fflush(stdout);
        if (!o.pass) ++failed;
    }
    return failed ? 1 : 0;
}
