#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "markoff/numbers.hpp"
#include "markoff/poly.hpp"
#include "markoff/quadratic.hpp"
#include "markoff/valuation.hpp"

using namespace markoff;

TEST_CASE("p-adic valuation basics") {
    CHECK(padic_valuation(QQ(12), ZZ(2)) == 2);  // 12 = 2^2 * 3
    CHECK(padic_valuation(QQ(5, 9), ZZ(3)) == -2);
    CHECK(padic_valuation(QQ(1), ZZ(7)) == 0);
    CHECK_THROWS_AS(padic_valuation(QQ(0), ZZ(2)), precondition_error);
    CHECK_THROWS_AS(padic_valuation(QQ(3), ZZ(6)), precondition_error);
}

TEST_CASE("valuation axioms on random rationals") {
    std::mt19937_64 rng(20240917);
    std::uniform_int_distribution<long> num(-400, 400), den(1, 60);
    for (const long pl : {2L, 3L, 5L, 7L}) {
        ZZ p(pl);
        for (int i = 0; i < 400; ++i) {
            QQ x(num(rng), den(rng)), y(num(rng), den(rng));
            if (x == 0 || y == 0) continue;
            CHECK(padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p));
            if (x + y != 0) {
                long vs = padic_valuation(x + y, p);
                long vx = padic_valuation(x, p), vy = padic_valuation(y, p);
                CHECK(vs >= std::min(vx, vy));
                if (vx != vy) CHECK(vs == std::min(vx, vy));
            }
        }
    }
}

TEST_CASE("function field places") {
    RatFunc T = RatFunc::var();
    RatFunc one(QQ(1));
    CHECK(place_valuation(T * T + one, FuncFieldInfinity{}) == -2);
    CHECK(place_valuation(T * T * T / (T - one), FuncFieldPoint{QQ(0)}) == 3);
    CHECK(place_valuation(RatFunc(QQ(5)), FuncFieldInfinity{}) == 0);
    CHECK_THROWS_AS(place_valuation(RatFunc(), FuncFieldInfinity{}), precondition_error);

    // multiplicativity / ultrametric at a point and at infinity
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coef(-5, 5), deg(0, 4);
    auto rand_poly = [&] {
        std::vector<QQ> cs(deg(rng) + 1);
        for (auto& c : cs) c = QQ(coef(rng));
        return Poly<QQ>(cs);
    };
    for (int i = 0; i < 200; ++i) {
        RatFunc f = RatFunc(rand_poly(), rand_poly() + Poly<QQ>::monomial(QQ(1), 5));
        RatFunc g = RatFunc(rand_poly(), rand_poly() + Poly<QQ>::monomial(QQ(1), 3));
        if (f.is_zero() || g.is_zero()) continue;
        for (Place pl : {Place{FuncFieldInfinity{}}, Place{FuncFieldPoint{QQ(0)}}, Place{FuncFieldPoint{QQ(2)}}}) {
            CHECK(place_valuation(f * g, pl) == place_valuation(f, pl) + place_valuation(g, pl));
            RatFunc s = f + g;
            if (!s.is_zero()) {
                long vf = place_valuation(f, pl), vg = place_valuation(g, pl);
                CHECK(place_valuation(s, pl) >= std::min(vf, vg));
                if (vf != vg) CHECK(place_valuation(s, pl) == std::min(vf, vg));
            }
        }
    }
}

TEST_CASE("O_d membership") {
    QuadElt i(QQ(0), QQ(1), ZZ(-1));
    CHECK(quad_ring_membership(i, ZZ(1)));
    QuadElt omega(QQ(1, 2), QQ(1, 2), ZZ(-3));
    CHECK(quad_ring_membership(omega, ZZ(3)));
    CHECK_FALSE(quad_ring_membership(QuadElt(QQ(1, 2)), ZZ(1)));
    CHECK_FALSE(quad_ring_membership(QuadElt(QQ(1, 2), QQ(1, 2), ZZ(-1)), ZZ(1)));
    CHECK(quad_ring_membership(QuadElt(QQ(7)), ZZ(5)));
    CHECK_THROWS_AS(quad_ring_membership(i, ZZ(-2)), precondition_error);
    CHECK_THROWS_AS(quad_ring_membership(i, ZZ(4)), precondition_error);
}

TEST_CASE("solve_lambda") {
    QuadElt l3 = solve_lambda(QQ(3));
    CHECK(l3 == QuadElt(QQ(3, 2), QQ(1, 2), ZZ(5)));
    CHECK(solve_lambda(QQ(2)) == QuadElt(QQ(1)));
    CHECK(solve_lambda(QQ(-2)) == QuadElt(QQ(-1)));
    CHECK(solve_lambda(QQ(0)) == QuadElt(QQ(0), QQ(1), ZZ(-1)));
    // perfect-square discriminant: larger-modulus root
    CHECK(solve_lambda(QQ(5, 2)) == QuadElt(QQ(2)));

    for (long t = -9; t <= 9; ++t) {
        QuadElt lam = solve_lambda(QQ(t));
        CHECK(lam + lam.inverse() == QuadElt(QQ(t)));
        if (t != 2 && t != -2) CHECK(lam * lam.inverse() == QuadElt(QQ(1)));
    }
}

TEST_CASE("QuadElt arithmetic and canonical D") {
    QuadElt a(QQ(1), QQ(2), ZZ(8));  // 1 + 2*sqrt(8) = 1 + 4*sqrt(2)
    CHECK(a.D() == 2);
    CHECK(a.s() == 4);
    QuadElt b(QQ(0), QQ(1), ZZ(18));  // 3*sqrt(2)
    CHECK((a * b) == QuadElt(QQ(24), QQ(3), ZZ(2)));
    CHECK_THROWS_AS(a + QuadElt(QQ(0), QQ(1), ZZ(3)), precondition_error);
    QuadElt sq = quad_sqrt(QQ(9, 4));
    CHECK(sq.is_rational());
    CHECK(sq.rational_value() == QQ(3, 2));
}

TEST_CASE("QuadInt ring arithmetic") {
    // (1+sqrt(-3))/2 is a unit of O_3: its sixth power is 1... check cube = -1
    QuadInt w(ZZ(3), ZZ(1), ZZ(1));
    QuadInt w2 = w * w;
    QuadInt w3 = w2 * w;
    CHECK(w3 == QuadInt::from_int(ZZ(3), ZZ(-1)));
    QuadInt g(ZZ(1), ZZ(2), ZZ(3));  // 2+3i
    CHECK((g * g.conj()) == QuadInt::from_int(ZZ(1), ZZ(13)));
    CHECK_THROWS_AS(QuadInt(ZZ(3), ZZ(1), ZZ(2)), precondition_error);
    CHECK_THROWS_AS(w + g, precondition_error);
    CHECK(quad_ring_membership(w.to_elt(), ZZ(3)));
}

TEST_CASE("parse-print round trip is identity") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> big(-1000000000, 1000000000);
    std::uniform_int_distribution<long> den(1, 100000);
    for (int i = 0; i < 300; ++i) {
        ZZ z(big(rng));
        z *= big(rng);  // exercise multi-limb values
        CHECK(parse_zz(to_string(z)) == z);
        QQ q(ZZ(big(rng)), ZZ(den(rng)));
        CHECK(parse_qq(to_string(q)) == q);
    }
    CHECK(parse_qq("5/9") == QQ(5, 9));
    CHECK(parse_qq("-12") == QQ(-12));
    CHECK_THROWS_AS(parse_qq("1/0"), precondition_error);
    CHECK_THROWS_AS(parse_zz("12a"), precondition_error);
}

TEST_CASE("factorization helpers") {
    auto f = factorize(ZZ(-600));
    CHECK(f[ZZ(2)] == 3);
    CHECK(f[ZZ(3)] == 1);
    CHECK(f[ZZ(5)] == 2);
    auto [sf, sq] = squarefree_split(ZZ(980));  // 980 = 2^2 * 5 * 7^2
    CHECK(sf == 5);
    CHECK(sq == 14);
    ZZ root;
    CHECK(perfect_square(ZZ(1444), root));
    CHECK(root == 38);
    CHECK_FALSE(perfect_square(ZZ(1445), root));
    CHECK(is_prime(ZZ(1000003)));
    CHECK_FALSE(is_prime(ZZ(1000001)));
}
