#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "markoff/slopes.hpp"

using namespace markoff;

namespace {

TriPoly px() { return TriPoly::x(); }
TriPoly py() { return TriPoly::y(); }
TriPoly pz() { return TriPoly::z(); }

TriPoly fricke_relation(const TriPoly& u, const TriPoly& v, const TriPoly& w) {
    return u * u + v * v + w * w - u * v * w - TriPoly(ZZ(2));
}

Mat2<ZZ> elementary(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> r(-3, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    Mat2<ZZ> m = Mat2<ZZ>{ZZ(1), ZZ(0), ZZ(0), ZZ(1)};
    for (int i = 0; i < 4; ++i) {
        ZZ v(r(rng));
        Mat2<ZZ> e = coin(rng) ? Mat2<ZZ>{ZZ(1), v, ZZ(0), ZZ(1)} : Mat2<ZZ>{ZZ(1), ZZ(0), v, ZZ(1)};
        m = m * e;
    }
    return m;
}

} // namespace

TEST_CASE("slope canonical form and order") {
    CHECK(Slope(2, 4) == Slope(1, 2));
    CHECK(Slope(-2, -4) == Slope(1, 2));
    CHECK(Slope(3, -6) == Slope(-1, 2));
    CHECK(Slope(-5, 0) == Slope(1, 0));
    CHECK(Slope::parse("-3/2") == Slope(-3, 2));
    auto list = slopes_up_to(3);
    REQUIRE(list.size() >= 6);
    CHECK(list[0] == Slope(0, 1));  // order 1, p ascending: 0/1 before 1/0
    CHECK(list[1] == Slope(1, 0));
    CHECK(list[2] == Slope(-1, 1));
    CHECK(list[3] == Slope(1, 1));
    for (size_t i = 1; i < list.size(); ++i) CHECK(list[i - 1] < list[i]);
}

TEST_CASE("trace recursion base cases and spec examples") {
    CHECK(trace_polynomial(Slope(1, 0)) == px());
    CHECK(trace_polynomial(Slope(0, 1)) == py());
    CHECK(trace_polynomial(Slope(1, 1)) == pz());
    CHECK(trace_polynomial(Slope(2, 1)) == px() * pz() - py());
    CHECK(trace_polynomial(Slope(1, 2)) == py() * pz() - px());
    CHECK(trace_polynomial(Slope(-1, 1)) == px() * py() - pz());
    CHECK(trace_of_slope<ZZ>(Slope(2, 1), ZZ(3), ZZ(3), ZZ(3)) == 6);
}

TEST_CASE("trace recursion agrees with matrix words for p+q <= 8") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 10; ++trial) {
        Mat2<ZZ> A = elementary(rng), B = elementary(rng);
        REQUIRE(A.det() == 1);
        REQUIRE(B.det() == 1);
        ZZ x = A.trace(), y = B.trace(), z = (A * B).trace();
        for (const Slope& sl : slopes_up_to(8)) {
            if (std::abs(sl.p) + sl.q > 8) continue;
            Mat2<ZZ> w = Mat2<ZZ>{ZZ(1), ZZ(0), ZZ(0), ZZ(1)};
            for (int c : christoffel_word(sl)) {
                if (c == 0) w = w * A;
                else if (c == 1) w = w * B;
                else w = w * B.inv_det1();
            }
            CHECK(w.trace() == trace_of_slope<ZZ>(sl, x, y, z));
        }
    }
}

TEST_CASE("Fricke identity holds on Farey triangles to depth 6") {
    TriPoly boundary = fricke_relation(px(), py(), pz());
    struct Tri {
        Slope a, b, m;
        int depth;
    };
    std::vector<Tri> stack{{Slope(1, 0), Slope(0, 1), Slope(1, 1), 0},
                           {Slope(0, 1), Slope(1, 0), Slope(-1, 1), 0}};
    int checked = 0;
    while (!stack.empty()) {
        Tri t = stack.back();
        stack.pop_back();
        TriPoly ta = trace_polynomial(t.a), tb = trace_polynomial(t.b), tm = trace_polynomial(t.m);
        CHECK(fricke_relation(ta, tb, tm) == boundary);
        ++checked;
        if (t.depth < 6) {
            Slope am(t.a.p + t.m.p, t.a.q + t.m.q);
            Slope mb(t.m.p + t.b.p, t.m.q + t.b.q);
            stack.push_back({t.a, t.m, am, t.depth + 1});
            stack.push_back({t.m, t.b, mb, t.depth + 1});
        }
    }
    CHECK(checked == 2 * 127);
}

TEST_CASE("reducible triple criterion") {
    CHECK(is_reducible_triple(ZZ(2), ZZ(2), ZZ(2)));
    CHECK_FALSE(is_reducible_triple(ZZ(0), ZZ(0), ZZ(0)));
    // (t, t, t^2-2) is reducible identically in t
    Poly<QQ> t = Poly<QQ>::var();
    Poly<QQ> t2 = t * t - Poly<QQ>(QQ(2));
    CHECK(is_reducible_triple(t, t, t2));
}

TEST_CASE("move reflections on slopes match trace substitution") {
    // trace(sl; moved triple) == trace(reflect(sl); triple), moves in the
    // trace presentation (x,y,z) -> e.g. (yz-x, y, z)
    TriPoly X = px(), Y = py(), Z = pz();
    struct Case {
        Axis ax;
        TriPoly mx, my, mz;
    };
    std::vector<Case> cases{{Axis::X, Y * Z - X, Y, Z},
                            {Axis::Y, X, X * Z - Y, Z},
                            {Axis::Z, X, Y, X * Y - Z}};
    for (auto& c : cases) {
        for (const Slope& sl : slopes_up_to(6)) {
            TriPoly lhs = trace_of_slope<TriPoly>(sl, c.mx, c.my, c.mz);
            TriPoly rhs = trace_polynomial(reflect_slope(c.ax, sl));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("slope_to_axis_word identity") {
    for (const Slope& sl : slopes_up_to(9)) {
        auto [word, ax] = slope_to_axis_word(sl);
        // symbolic: trace(sl; p) == trace(axis; word(p))
        Point<TriPoly> p{px(), py(), pz()};
        for (auto& st : word) {
            Axis mv = std::get<Axis>(st.step);
            Point<TriPoly> q = p;
            switch (mv) {
                case Axis::X: q.x = p.y * p.z - p.x; break;
                case Axis::Y: q.y = p.x * p.z - p.y; break;
                case Axis::Z: q.z = p.x * p.y - p.z; break;
            }
            p = q;
        }
        CHECK(trace_of_slope<TriPoly>(axis_slope(ax), p.x, p.y, p.z) == trace_polynomial(sl));
    }
}

TEST_CASE("translation length") {
    Place two = PAdicPlace{ZZ(2)};
    auto V = [&](const char* s, Place pl) { return Valued(pl, parse_qq(s)); };
    Mat2<Valued> g{V("2", two), V("0", two), V("0", two), V("1/2", two)};
    CHECK(translation_length(g) == 2);

    Mat2<Valued> h{V("3", two), V("1", two), V("2", two), V("1", two)};
    CHECK(translation_length(h) == 0);  // integral trace

    // zero trace counts as length 0
    Mat2<Valued> j{V("0", two), V("-1", two), V("1", two), V("0", two)};
    CHECK(translation_length(j) == 0);

    // function field at infinity: diag(T, 1/T)
    RatFunc T = RatFunc::var();
    Place inf = FuncFieldInfinity{};
    Mat2<Valued> k{Valued(inf, T), Valued(inf, RatFunc(QQ(0))), Valued(inf, RatFunc(QQ(0))),
                   Valued(inf, RatFunc(QQ(1)) / T)};
    CHECK(translation_length(k) == 2);

    Mat2<Valued> bad{V("2", two), V("0", two), V("0", two), V("1", two)};
    CHECK_THROWS_AS(translation_length(bad), precondition_error);
}

TEST_CASE("translation length is conjugation invariant") {
    std::mt19937_64 rng(5150);
    Place five = PAdicPlace{ZZ(5)};
    std::uniform_int_distribution<long> num(-40, 40), den(1, 25);
    for (int i = 0; i < 200; ++i) {
        QQ a(num(rng), den(rng));
        QQ b(num(rng), den(rng));
        QQ c(num(rng), den(rng));
        if (a == 0) continue;
        // build det-1: [[a, b],[c, (1+bc)/a]]
        QQ d = (QQ(1) + b * c) / a;
        Mat2<Valued> g{Valued(five, a), Valued(five, b), Valued(five, c), Valued(five, d)};
        std::mt19937_64 r2(i);
        Mat2<ZZ> hz = elementary(r2);
        Mat2<Valued> h{Valued(five, QQ(hz.a)), Valued(five, QQ(hz.b)), Valued(five, QQ(hz.c)),
                       Valued(five, QQ(hz.d))};
        CHECK(translation_length(g) == translation_length(h * g * h.inv_det1()));
        long v = g.trace().valuation_or_inf();
        CHECK((translation_length(g) == 0) == (v >= 0));
    }
}

TEST_CASE("systole search") {
    Place two = PAdicPlace{ZZ(2)};
    // all traces integral: slope found immediately at order 1
    auto hit = systole_search(Valued(two, QQ(3)), Valued(two, QQ(3)), Valued(two, QQ(3)), 10);
    CHECK(hit.valuation >= 0);
    CHECK(hit.slope.order() == 1);

    // x = y = 5/2 have v = -1, z = 6: boundary 25/2 - 75/2 + 36 - 2 = 9 is
    // integral, and the first integral trace sits at the deeper slope 1/1
    Valued x(two, QQ(5, 2)), y(two, QQ(5, 2)), z(two, QQ(6));
    Valued boundary = x * x + y * y + z * z - x * y * z - Valued(two, QQ(2));
    REQUIRE(boundary.valuation_or_inf() >= 0);
    auto hit2 = systole_search(x, y, z, 10);
    CHECK(hit2.valuation >= 0);
    CHECK(hit2.slope == Slope(1, 1));

    // function-field example: A = diag(lambda, 1/lambda) constants, B upper
    // triangular with a T entry: slope 1/0 wins with constant trace
    Place inf = FuncFieldInfinity{};
    RatFunc T = RatFunc::var();
    auto C = [&](const QQ& q) { return Valued(inf, RatFunc(q)); };
    Mat2<Valued> A{C(QQ(2)), C(QQ(0)), C(QQ(0)), C(QQ(1, 2))};
    Mat2<Valued> B{C(QQ(3)), Valued(inf, T), C(QQ(0)), C(QQ(1, 3))};
    auto hit3 = systole_search(A, B, 10);
    // both coordinate traces are constant; the first breadth-first witness
    // has order 1 and valuation 0
    CHECK(hit3.slope.order() == 1);
    CHECK(hit3.valuation == 0);
    CHECK(trace_of_slope<Valued>(Slope(1, 0), A.trace(), B.trace(), (A * B).trace())
              .valuation_or_inf() == 0);

    // hypothesis violation: boundary not integral
    Valued bx(two, QQ(1, 2)), by(two, QQ(0)), bz(two, QQ(0));
    CHECK_THROWS_AS(systole_search(bx, by, bz, 10), precondition_error);
}

TEST_CASE("systole search post-check property") {
    std::mt19937_64 rng(808);
    std::uniform_int_distribution<long> num(-30, 30), den(1, 9);
    Place three = PAdicPlace{ZZ(3)};
    int found = 0;
    for (int i = 0; i < 300; ++i) {
        QQ x(num(rng), den(rng)), y(num(rng), den(rng)), z(num(rng), den(rng));
        Valued vx(three, x), vy(three, y), vz(three, z);
        Valued boundary = vx * vx + vy * vy + vz * vz - vx * vy * vz - Valued(three, QQ(2));
        if (boundary.valuation_or_inf() < 0) continue;
        try {
            auto hit = systole_search(vx, vy, vz, 12);
            CHECK(hit.valuation >= 0);
            CHECK(hit.trace.valuation_or_inf() >= 0);
            ++found;
        } catch (const bound_error&) {
            // bound too small is a legal outcome; hypothesis held regardless
        }
    }
    CHECK(found > 50);
}
