#include <doctest.h>

#include "hyperred/errors.hpp"
#include "hyperred/poly.hpp"
#include "hyperred/roots.hpp"

#include <random>

using namespace hyperred;

namespace {

// Oracle: determinant of the Sylvester matrix by fraction-free elimination.
Rat sylvester_resultant(const RatPoly& a, const RatPoly& b) {
    int m = a.deg(), n = b.deg(), N = m + n;
    std::vector<std::vector<Rat>> S(N, std::vector<Rat>(N, Rat(0)));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S[r][r + k] = a.coeff(m - k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S[n + r][r + k] = b.coeff(n - k);
    Rat det = 1;
    for (int c = 0; c < N; ++c) {
        int piv = -1;
        for (int r = c; r < N; ++r)
            if (S[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != c) {
            std::swap(S[piv], S[c]);
            det = -det;
        }
        det *= S[c][c];
        for (int r = c + 1; r < N; ++r) {
            Rat t = S[r][c] / S[c][c];
            for (int k = c; k < N; ++k) S[r][k] -= t * S[c][k];
        }
    }
    return det;
}

IntPoly fam(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long x : cs) v.emplace_back(x);
    return IntPoly::family(v);
}

} // namespace

TEST_CASE("discriminant examples") {
    CHECK(discriminant(fam({-1, 0})) == 4);
    CHECK(discriminant(fam({0, 0})) == 0);
    CHECK(discriminant(fam({0, -2})) == -108);
}

TEST_CASE("discriminant matches the cubic formula and the Sylvester oracle") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int t = 0; t < 300; ++t) {
        long c2 = d(rng), c3 = d(rng);
        IntPoly f = fam({c2, c3});
        CHECK(discriminant(f) == Int(-4 * c2 * c2 * c2 - 27 * c3 * c3));
        CHECK(has_nonzero_discriminant(f) == (discriminant(f) != 0));
    }
    for (int t = 0; t < 100; ++t) {
        IntPoly f = fam({d(rng), d(rng), d(rng), d(rng)});
        RatPoly fr = f.to_rat();
        Rat syl = sylvester_resultant(fr, fr.derivative()); // = Res(f, f')
        CHECK(Rat(discriminant(f)) == syl); // (-1)^{10/2·...}: n=5 gives sign +1
    }
}

TEST_CASE("discriminant equals the squared Vandermonde of certified roots") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-50, 50);
    int checked = 0;
    for (int t = 0; t < 1000; ++t) {
        int g = 1 + (t % 2);
        std::vector<Int> cs;
        for (int i = 0; i < 2 * g; ++i) cs.emplace_back(d(rng));
        IntPoly f = IntPoly::family(cs);
        Int D = discriminant(f);
        if (D == 0) continue;
        CertifiedRoots r = complex_roots(f);
        CBall prod(Ball(1));
        for (size_t i = 0; i < r.roots.size(); ++i)
            for (size_t j = 0; j < i; ++j) {
                CBall diff = r.roots[i].ball() - r.roots[j].ball();
                prod *= diff * diff;
            }
        Ball Db(D);
        CHECK(overlaps(prod.re, Db));
        CHECK(prod.im.contains_zero());
        ++checked;
    }
    CHECK(checked > 950);
}

TEST_CASE("resultant convention and examples") {
    RatPoly a{-2, 0, 0, 1}, b{-3, 1};
    CHECK(resultant(a, b) == 25);
    CHECK(resultant(RatPoly{0, 1}, RatPoly{0, 1}) == 0);
    CHECK(resultant(a, RatPoly{1}) == 1);
    // multiplicativity in the first argument
    RatPoly c{1, 2, 3};
    CHECK(resultant(a * c, b) == resultant(a, b) * resultant(c, b));
    CHECK(resultant_std(a, b) == sylvester_resultant(a, b));
    RatPoly q(std::vector<Rat>{make_rat(1, 2), make_rat(-3, 7), 1});
    CHECK(resultant_std(q, a) == sylvester_resultant(q, a));
}

TEST_CASE("height") {
    CHECK(height(fam({-1, 0})).mid_d() == doctest::Approx(1.0));
    CHECK(height(fam({0, 0})).mid_d() == 0.0);
    CHECK(height(fam({4, 0, 0, 8})).mid_d() == doctest::Approx(2.0));
    // scaling law: c_i -> t^i c_i multiplies Ht by |t|
    IntPoly f = fam({3, -7, 11, 2});
    long t = -3;
    std::vector<Int> cs;
    for (int i = 2; i <= 5; ++i) cs.push_back(f.ci(i) * ipow(Int(t), i));
    IntPoly tf = IntPoly::family(cs);
    Ball lhs = height(tf), rhs = height(f) * Ball(3);
    CHECK(overlaps(lhs, rhs));
    CHECK(height_less_than(fam({-4, 7}), Rat(2)) == false);
    CHECK(height_less_than(fam({3, 7}), Rat(2)) == true);
    CHECK(height_less_than(fam({3, 8}), Rat(2)) == false);
}

TEST_CASE("newton polygon") {
    auto np = newton_polygon(RatPoly{-3, 1}, 3);
    REQUIRE(np.vertices.size() == 2);
    CHECK(np.vertices[0] == std::make_pair(0L, 1L));
    CHECK(np.vertices[1] == std::make_pair(1L, 0L));
    CHECK(np.slopes() == std::vector<Rat>{-1});
    auto np2 = newton_polygon(RatPoly{1, 1, 1}, 5);
    CHECK(np2.slopes() == std::vector<Rat>{0});
    RatPoly h(std::vector<Rat>{make_rat(1, 25), make_rat(1, 5), 1});
    auto np3 = newton_polygon(h, 5);
    CHECK(np3.slopes() == std::vector<Rat>{1});
    CHECK(np3.root_valuations() == std::vector<Rat>{-1, -1});
    CHECK_THROWS_AS(newton_polygon(RatPoly(), 5), Error);
}

TEST_CASE("hensel split") {
    RatPoly h(std::vector<Rat>{0, make_rat(-1, 4), 1});
    auto s = hensel_split(h, 2);
    CHECK(s.plus == RatPoly{0, 1});
    CHECK(s.minus == RatPoly(std::vector<Rat>{make_rat(-1, 4), 1}));
    CHECK(s.exact);

    RatPoly hi{5, -3, 0, 1};
    auto s2 = hensel_split(hi, 7);
    CHECK(s2.plus == hi);
    CHECK(s2.minus == RatPoly{1});

    RatPoly h3 = RatPoly{-2, 1} * RatPoly(std::vector<Rat>{make_rat(-1, 9), 1});
    auto s3 = hensel_split(h3, 3, 4);
    CHECK(s3.plus == RatPoly{-2, 1});
    CHECK(s3.minus == RatPoly(std::vector<Rat>{make_rat(-1, 9), 1}));

    // p-adic (non-rational) split: x^2 - 7 has roots of valuation 0 at p = 3,
    // combined with a factor whose root has valuation -1
    RatPoly h4 = RatPoly{-7, 0, 1} * RatPoly(std::vector<Rat>{make_rat(-5, 3), 1}) + RatPoly(std::vector<Rat>{0, make_rat(1, 3)});
    auto s4 = hensel_split(h4, 3, 20);
    CHECK(s4.plus.deg() == 2);
    CHECK(s4.minus.deg() == 1);
    RatPoly diff = h4 - s4.plus * s4.minus;
    for (auto& c : diff.c) CHECK(valuation(c, Int(3)) >= 20);
    for (auto& c : s4.plus.c) CHECK(valuation(c, Int(3)) >= 0);
}

TEST_CASE("text formats") {
    IntPoly f = parse_family("0,-2");
    CHECK(f == fam({0, -2}));
    CHECK(format_family(f) == "0,-2");
    CHECK(parse_poly("1,-3") == RatPoly{-3, 1});
    CHECK(parse_poly("x^2+3*x+9") == RatPoly{9, 3, 1});
    CHECK(parse_poly("x - 129/100") == RatPoly(std::vector<Rat>{make_rat(-129, 100), 1}));
    CHECK(parse_poly("-383/1000") == RatPoly::constant(make_rat(-383, 1000)));
    CHECK_THROWS_AS(parse_family("1,2,3"), Error);
    CHECK_THROWS_AS(parse_poly("1,a"), Error);
}
