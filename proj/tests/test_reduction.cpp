#include <doctest.h>

#include "hyperred/errors.hpp"
#include "hyperred/orbits.hpp"
#include "hyperred/quadspace.hpp"
#include "hyperred/reduction.hpp"
#include "oracles.hpp"

#include <complex>
#include <random>

using namespace hyperred;
using oracle::fam;

namespace {

double rel_err(const Ball& a, const Ball& b) {
    double x = a.mid_d(), y = b.mid_d();
    return std::fabs(x - y) / std::max(1.0, std::max(std::fabs(x), std::fabs(y)));
}

double max_diff(const BMat& a, const BMat& b) {
    double m = 0, s = 1;
    for (size_t i = 0; i < a.a.size(); ++i) {
        m = std::max(m, std::fabs(a.a[i].mid_d() - b.a[i].mid_d()));
        s = std::max(s, std::fabs(a.a[i].mid_d()));
    }
    return m / s;
}

// Oracle: roots of x^3 - 2 in closed form.
double norm_cuberoot2(double u0) {
    double r = std::cbrt(2.0), s = 0;
    for (int k = 0; k < 3; ++k) {
        std::complex<double> w = std::polar(r, 2 * M_PI * k / 3);
        s += std::abs(w + u0) / std::abs(3.0 * w * w);
    }
    return s;
}

// Oracle: brute force over a box for the minimum of x^T Q x.
double box_min(const std::vector<double>& G, int k, long B) {
    double m = INFINITY;
    for (auto& v : oracle::box_vectors(k, B)) {
        double s = 0;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) s += v[i] * G[i * k + j] * v[j];
        m = std::min(m, s);
    }
    return std::sqrt(m);
}

} // namespace

TEST_CASE("reduction covariant of multiplication by x") {
    IntPoly f = fam({-1, 0});
    auto cg = reduction_covariant(mulx_matrix(f), tau_gram(f, RatPoly{1}));
    std::vector<double> expect{2, 0, 1, 0, 1, 0, 1, 0, 1};
    for (int i = 0; i < 9; ++i) CHECK(cg.H.a[i].mid_d() == doctest::Approx(expect[i]).epsilon(1e-15));
    CHECK(cg.compat_residual < 1e-9);
    CHECK(cg.commute_residual < 1e-9);
    CHECK(certainly_positive_definite(cg.H));
    CHECK(std::fabs(std::fabs(det(cg.H).mid_d()) - 1) < 1e-12);
    CHECK_THROWS_AS(reduction_covariant(mulx_matrix(IntPoly::family({Int(0), Int(0)}))), Error);
}

TEST_CASE("covariant_norm_of_U examples") {
    CHECK(covariant_norm_of_U(fam({-1, 0}), RatPoly{1}).mid_d() == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(covariant_norm_of_U(fam({-1, 0}), RatPoly{0, 1}).mid_d() == doctest::Approx(1.0).epsilon(1e-14));
    double v = covariant_norm_of_U(fam({0, -2}), RatPoly{-3, 1}).mid_d();
    CHECK(v == doctest::Approx(norm_cuberoot2(-3)).epsilon(1e-13));
    CHECK(v == doctest::Approx(1.9573).epsilon(1e-4));
    // a common root contributes zero
    CHECK(covariant_norm_of_U(fam({-1, 0}), RatPoly{-1, 1}).mid_d() == doctest::Approx(2.0));
}

TEST_CASE("scale invariance and commuting operators") {
    for (auto f : {fam({0, -2}), fam({-7, 10}), fam({3, -2, -3, 1})}) {
        QMat G = tau_gram(f, RatPoly{1});
        QMat X = mulx_matrix(f);
        auto h1 = reduction_covariant(X, G);
        auto h2 = reduction_covariant(X + X, G);
        CHECK(max_diff(h1.H, h2.H) < 1e-12);
        // x^2 + 1 commutes with x and is regular semisimple here
        QMat Y = X * X + QMat::identity(X.rows);
        if (discriminant(charpoly(Y)) != 0) {
            auto h3 = reduction_covariant(Y, G);
            CHECK(max_diff(h1.H, h3.H) < 1e-12);
        }
    }
}

TEST_CASE("equivariance under integral conjugation") {
    std::mt19937_64 rng(17);
    for (auto f : {fam({0, -2}), fam({-1, 0}), fam({-5, 0, 4, 1})}) {
        auto rep = integral_orbit_rep(f, identity_triple(f));
        QMat T = to_q(rep.T);
        auto H = reduction_covariant(T).H;
        for (int t = 0; t < 5; ++t) {
            ZMat g = oracle::random_gamma(f.deg(), rng, 8);
            QMat gq = to_q(g), gi = inverse(gq);
            auto H2 = reduction_covariant(gq * T * gi).H;
            BMat Gi = BMat::from(gi);
            BMat expect = Gi.transpose() * H * Gi;
            CHECK(max_diff(H2, expect) < 1e-12);
        }
    }
}

TEST_CASE("norm of the marked vector matches the closed form") {
    for (auto f : {fam({0, -2}), fam({-7, 10}), fam({3, -2, -3, 1})}) {
        for (auto& P : search_jacobian_points(f, 10, 4)) {
            for (auto& t : {P.t, cantor_add(P, P).t}) {
                if (resultant(t.U, f.to_rat()) == 0) continue;
                auto rep = integral_orbit_rep(f, t);
                auto H = reduction_covariant(to_q(rep.T)).H;
                Ball lhs = quad(H, rep.w, rep.w);
                Ball rhs = Ball(rep.lattice.M) * covariant_norm_of_U(f, t.U);
                CHECK(rel_err(lhs, rhs) < 1e-12);
            }
        }
    }
}

TEST_CASE("shortest_vector") {
    auto sv = shortest_vector(BMat::identity(3));
    CHECK(sv.length.mid_d() == doctest::Approx(1.0));
    auto d = shortest_vector(BMat::from_doubles(3, 3, {4, 0, 0, 0, 9, 0, 0, 0, 25}));
    CHECK(d.length.mid_d() == doctest::Approx(2.0));
    CHECK(d.v == ZVec{Int(1), Int(0), Int(0)});

    // M_1 for x^3 - x: x and x^2 - 1 have length 1, below the length sqrt 2 of the vector 1
    IntPoly f = fam({-1, 0});
    auto H = reduction_covariant(mulx_matrix(f), tau_gram(f, RatPoly{1})).H;
    auto s1 = shortest_vector(H);
    CHECK(s1.length.mid_d() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(box_min(H.mids(), 3, 3) == doctest::Approx(1.0));
    CHECK(quad(H, ZVec{Int(1), Int(0), Int(0)}, ZVec{Int(1), Int(0), Int(0)}).mid_d() == doctest::Approx(2.0));

    std::mt19937_64 rng(21);
    for (int t = 0; t < 30; ++t) {
        int k = 2 + t % 4;
        auto G = oracle::random_gram(k, rng);
        auto r = shortest_vector(BMat::from_doubles(k, k, G));
        CHECK(r.length.mid_d() == doctest::Approx(box_min(G, k, 3)).epsilon(1e-12));
    }
}

TEST_CASE("lower hull") {
    CHECK(lower_hull_vertices({0, 0.5, 0.5, 0}) == std::vector<int>{0, 3});
    CHECK(lower_hull_vertices({0, -1, -1.5, -1.5}) == std::vector<int>{0, 1, 2, 3});
    CHECK(lower_hull_vertices({0, -1, -2, -3}) == std::vector<int>{0, 3});
    CHECK(oracle::hull_corners({0, -1, -1.5, -1.5}) == std::vector<int>{0, 1, 2, 3});
    CHECK(oracle::hull_corners({0, 0.5, 0.5, 0}) == std::vector<int>{0, 3});
}

TEST_CASE("canonical plot examples") {
    auto p = canonical_plot(BMat::identity(4));
    CHECK(p.vertices == std::vector<int>{0, 4});
    for (auto& b : p.log_covol) CHECK(std::fabs(b.mid_d()) < 1e-12);

    IntPoly f = fam({-1, 0});
    auto H = reduction_covariant(mulx_matrix(f), tau_gram(f, RatPoly{1})).H;
    auto q = canonical_plot(H);
    CHECK(q.vertices == std::vector<int>{0, 3});
    for (int i = 0; i <= 3; ++i) CHECK(std::fabs(q.log_covol[i].mid_d()) < 1e-12);
    auto mins = oracle::plot_minima(H.mids(), 3, 3, 2);
    for (int i = 0; i <= 3; ++i) CHECK(q.log_covol[i].mid_d() == doctest::Approx(mins[i]));

    // filtration is nested at the corners of a strictly convex plot
    auto D = BMat::from_doubles(3, 3, {0.01, 0, 0, 0, 1, 0, 0, 0, 100});
    auto r = canonical_plot(D);
    CHECK(r.vertices == std::vector<int>{0, 1, 2, 3});
    auto fl = r.filtration();
    CHECK(fl[1].cols == 1);
    CHECK(fl[1](0, 0) == 1);
    CHECK(fl[2](2, 0) == 0);
    CHECK(fl[2](2, 1) == 0);
}

TEST_CASE("canonical plot against exhaustive search") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 20; ++t) {
        int k = (t % 4 == 3) ? 4 : 3;
        auto G = oracle::random_gram(k, rng);
        auto p = canonical_plot(BMat::from_doubles(k, k, G));
        auto mins = oracle::plot_minima(G, k, k == 3 ? 2 : 1, k / 2);
        for (int i = 0; i <= k; ++i) {
            CHECK(p.log_covol[i].mid_d() == doctest::Approx(mins[i]).epsilon(1e-9));
            CHECK(p.log_covol[i].mid_d() <= mins[i] + 1e-9);
            CHECK(log_covolume(p.minimizer[i], BMat::from_doubles(k, k, G)).mid_d() ==
                  doctest::Approx(p.log_covol[i].mid_d()));
        }
        CHECK(p.vertices == oracle::hull_corners(mins));
    }
}

TEST_CASE("submodularity of log covolume") {
    std::mt19937_64 rng(44);
    std::uniform_int_distribution<long> d(-3, 3);
    for (int t = 0; t < 40; ++t) {
        int k = 3 + t % 3;
        BMat Q = BMat::from_doubles(k, k, oracle::random_gram(k, rng));
        auto rnd = [&](int r) {
            ZMat m(k, r);
            for (auto& x : m.a) x = d(rng);
            return m;
        };
        ZMat A = rnd(1 + t % (k - 1)), B = rnd(1 + (t / 3) % (k - 1));
        if (rank(to_q(A)) < A.cols || rank(to_q(B)) < B.cols) continue;
        ZMat I = sublattice_intersection(A, B);
        ZMat S = to_z(lattice_basis(hstack(to_q(A), to_q(B))));
        double lhs = log_covolume_raw(I, Q).mid_d() + log_covolume_raw(S, Q).mid_d();
        double rhs = log_covolume_raw(A, Q).mid_d() + log_covolume_raw(B, Q).mid_d();
        CHECK(lhs <= rhs + 1e-9);
    }
}

TEST_CASE("covolume formula") {
    for (auto f : {fam({-1, 0}), fam({0, -2}), fam({-7, 10}), fam({3, -2, -3, 1}), fam({-5, 0, 4, 1})}) {
        int n = f.deg();
        std::vector<double> vals(n + 1);
        for (int m = 1; m <= n; ++m) {
            auto [l, r] = covolume_formula_check(f, m);
            CHECK(std::fabs(l.mid_d() - r.mid_d()) < 1e-12);
            vals[m] = l.mid_d();
        }
        CHECK(std::fabs(vals[n]) < 1e-12);
        for (int m = 1; m < n; ++m) CHECK(vals[m] == doctest::Approx(vals[n - m]));
    }
    auto [l1, r1] = covolume_formula_check(fam({-1, 0}), 1);
    CHECK(l1.mid_d() == doctest::Approx(0.5 * std::log(2.0)));
    CHECK(r1.mid_d() == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("cusp coordinates") {
    auto c0 = cusp_coordinates(BMat::identity(5));
    CHECK(c0.t.size() == 2);
    for (auto& t : c0.t) CHECK(t.mid_d() == doctest::Approx(1.0));
    auto c1 = cusp_coordinates(BMat::from_doubles(3, 3, {16, 0, 0, 0, 1, 0, 0, 0, 1.0 / 16}));
    CHECK(c1.t[0].mid_d() == doctest::Approx(4.0));
    // t is invariant under the unipotent radical
    QMat nq = QMat::identity(3);
    nq(0, 1) = 3;
    nq(1, 2) = -3;
    nq(0, 2) = Rat(-9, 2);
    BMat N = BMat::from(nq.transpose());
    BMat H = N.transpose() * BMat::from_doubles(3, 3, {16, 0, 0, 0, 1, 0, 0, 0, 1.0 / 16}) * N;
    CHECK(cusp_coordinates(H).t[0].mid_d() == doctest::Approx(4.0));
}

TEST_CASE("Siegel reduction and the short-vector criterion") {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<long> d(-6, 6);
    std::vector<QMat> ops;
    for (int t = 0; t < 40; ++t) {
        int n = (t % 3 == 0) ? 5 : 3;
        QMat T(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; i + j <= n - 1; ++j) {
                T(i, j) = d(rng);
                T(n - 1 - j, n - 1 - i) = T(i, j);
            }
        ops.push_back(T);
    }
    // widely spread roots give a short vector in the distinguished orbit
    for (long k : {4, 7, 12, 30})
        ops.push_back(to_q(integral_orbit_rep(fam({-k * k, 1}), identity_triple(fam({-k * k, 1}))).T));
    ops.push_back(to_q(integral_orbit_rep(fam({-50, 0, 400, 1}), identity_triple(fam({-50, 0, 400, 1}))).T));
    int tested = 0;
    for (auto& T : ops) {
        int n = T.rows, g = (n - 1) / 2;
        if (discriminant(charpoly(T)) == 0) continue;
        auto H = reduction_covariant(T).H;
        auto sr = siegel_reduce(H);
        QMat gq = to_q(sr.gamma);
        CHECK(gq.transpose() * J_matrix(n) * gq == J_matrix(n));
        double len = shortest_vector(H).length.mid_d();
        double c = std::pow(kSiegelConstant, g);
        if (len < c) {
            // any eps in (len / c, 1) works; the strongest choice is the left end
            CHECK(sr.cusp.t[0].mid_d() * len / c >= 1 - 1e-12);
            ++tested;
        }
    }
    CHECK(tested >= 4);
}

TEST_CASE("flag_profile") {
    IntPoly f = fam({-1, 0});
    auto fp = flag_profile(f, QMat::identity(3));
    for (auto& x : fp.n) CHECK(x == 1);
    CHECK(fp.q_lower == 1);

    // (2, x, x^2/2) is x-stable and unimodular for x^3 - 4x
    IntPoly h = fam({-4, 0});
    QMat M(3, 3);
    M(0, 0) = 2;
    M(1, 1) = 1;
    M(2, 2) = Rat(1, 2);
    auto p = flag_profile(h, M);
    CHECK(p.n == std::vector<Rat>{Rat(1, 2), Rat(1), Rat(2)});
    CHECK(p.q_lower == 2);
    CHECK_THROWS_AS(flag_profile(f, M), Error);
    QMat bad = QMat::identity(3);
    bad(0, 0) = 2;
    try {
        flag_profile(f, bad);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUnimodular);
    }

    // stable unimodular lattices from small searches all satisfy the chain
    for (long c2 = -6; c2 <= 6; ++c2)
        for (long c3 = -6; c3 <= 6; ++c3) {
            IntPoly g = IntPoly::family({Int(c2), Int(c3)});
            if (discriminant(g) == 0) continue;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    for (int c = 0; c < 4; ++c) {
                        QMat L(3, 3);
                        L(0, 0) = 2;
                        L(0, 1) = a;
                        L(1, 1) = 1;
                        L(0, 2) = make_rat(c, 2);
                        L(1, 2) = make_rat(b, 2);
                        L(2, 2) = Rat(1, 2);
                        try {
                            auto r = flag_profile(g, L);
                            CHECK(r.q_lower == 2);
                        } catch (const Error& e) {
                            CHECK((e.kind() == ErrorKind::NotStable || e.kind() == ErrorKind::NotUnimodular));
                        }
                    }
        }
}
