#include "markoff/selftest.hpp"

#include <random>

#include "markoff/curves.hpp"
#include "markoff/enumerate.hpp"
#include "markoff/fibers.hpp"
#include "markoff/slopes.hpp"
#include "markoff/torus_lattice.hpp"

namespace markoff {

namespace {

struct Ctx {
    SelfTestReport& rep;
    std::string suite;

    void check(bool ok, const std::string& what) {
        ++rep.checks;
        if (!ok) rep.failures.push_back(suite + ": " + what);
    }
};

MarkoffSurface random_surface(std::mt19937_64& rng, PointZ& seed_point) {
    std::uniform_int_distribution<long> small(-4, 4);
    std::uniform_int_distribution<int> coin(0, 1);
    seed_point = PointZ{ZZ(small(rng)), ZZ(small(rng)), ZZ(small(rng))};
    int eps = coin(rng) ? 1 : -1;
    ZZ a(small(rng)), b(small(rng)), c(small(rng));
    ZZ xyz = seed_point.x * seed_point.y * seed_point.z;
    ZZ d = seed_point.x * seed_point.x + seed_point.y * seed_point.y + seed_point.z * seed_point.z +
           (eps > 0 ? xyz : -xyz) - a * seed_point.x - b * seed_point.y - c * seed_point.z;
    return MarkoffSurface{eps, a, b, c, d, RawProvenance{}};
}

void suite_valuations(Ctx c, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-300, 300), den(1, 40);
    for (const long pl : {2L, 3L, 5L}) {
        ZZ p(pl);
        for (int i = 0; i < 150; ++i) {
            QQ x(num(rng), den(rng)), y(num(rng), den(rng));
            if (x == 0 || y == 0) continue;
            c.check(padic_valuation(x * y, p) == padic_valuation(x, p) + padic_valuation(y, p),
                    "v(xy) = v(x)+v(y)");
            if (x + y != 0) {
                long vx = padic_valuation(x, p), vy = padic_valuation(y, p);
                long vs = padic_valuation(x + y, p);
                c.check(vs >= std::min(vx, vy), "ultrametric inequality");
                if (vx != vy) c.check(vs == std::min(vx, vy), "ultrametric equality case");
            }
        }
    }
}

void suite_lambda(Ctx c) {
    for (long t = -9; t <= 9; ++t) {
        QuadElt lam = solve_lambda(QQ(t));
        c.check(lam + lam.inverse() == QuadElt(QQ(t)), "lambda + 1/lambda = t at t=" + std::to_string(t));
        if (t != 2 && t != -2)
            c.check(lam * lam.inverse() == QuadElt(QQ(1)), "lambda * 1/lambda = 1");
    }
}

void suite_moves(Ctx c, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> move(0, 2);
    for (int trial = 0; trial < 12; ++trial) {
        PointZ seed;
        MarkoffSurface s = random_surface(rng, seed);
        for (int i = 0; i < 30; ++i) {
            PointZ p = seed;
            for (int j = 0; j < 6; ++j) p = vieta_move(s, static_cast<Axis>(move(rng)), p);
            c.check(on_surface(s, p), "moved point stays on the surface");
            for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                PointZ q = vieta_move(s, ax, p);
                c.check(on_surface(s, q), "vieta image on surface");
                c.check(vieta_move(s, ax, q) == p, "vieta involution");
            }
            auto dr = descend(s, p);
            c.check(is_descend_minimal(s, dr.point), "descend endpoint minimal");
            c.check(apply_word(s, dr.word, p) == dr.point, "descend word replays");
            ZZ n = max_norm(p);
            PointZ walk = p;
            for (auto& st : dr.word) {
                walk = vieta_move(s, std::get<Axis>(st.step), walk);
                c.check(max_norm(walk) < n, "descend norms strictly decrease");
                n = max_norm(walk);
            }
        }
    }
}

void suite_fricke(Ctx c) {
    TriPoly X = TriPoly::x(), Y = TriPoly::y(), Z = TriPoly::z();
    TriPoly boundary = X * X + Y * Y + Z * Z - X * Y * Z - TriPoly(ZZ(2));
    struct Tri {
        Slope a, b, m;
        int depth;
    };
    std::vector<Tri> stack{{Slope(1, 0), Slope(0, 1), Slope(1, 1), 0}};
    while (!stack.empty()) {
        Tri t = stack.back();
        stack.pop_back();
        TriPoly ta = trace_polynomial(t.a), tb = trace_polynomial(t.b), tm = trace_polynomial(t.m);
        c.check(ta * ta + tb * tb + tm * tm - ta * tb * tm - TriPoly(ZZ(2)) == boundary,
                "Fricke identity on triangle at " + t.m.str());
        if (t.depth < 4) {
            stack.push_back({t.a, t.m, Slope(t.a.p + t.m.p, t.a.q + t.m.q), t.depth + 1});
            stack.push_back({t.m, t.b, Slope(t.m.p + t.b.p, t.m.q + t.b.q), t.depth + 1});
        }
    }
}

void suite_lengths(Ctx c, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-30, 30), den(1, 12), hentry(-3, 3);
    Place three = PAdicPlace{ZZ(3)};
    for (int i = 0; i < 120; ++i) {
        QQ a(num(rng), den(rng)), b(num(rng), den(rng)), cc(num(rng), den(rng));
        if (a == 0) continue;
        QQ d = (QQ(1) + b * cc) / a;
        Mat2<Valued> g{Valued(three, a), Valued(three, b), Valued(three, cc), Valued(three, d)};
        Mat2<Valued> h{Valued(three, QQ(1)), Valued(three, QQ(hentry(rng))), Valued(three, QQ(0)),
                       Valued(three, QQ(1))};
        c.check(translation_length(g) == translation_length(h * g * h.inv_det1()),
                "translation length conjugation-invariant");
        c.check((translation_length(g) == 0) == (g.trace().valuation_or_inf() >= 0),
                "length-zero criterion");
    }
}

void suite_fiber(Ctx c) {
    MarkoffSurface m = from_torus(ZZ(-2));
    TorusFiberParam par = fiber_parametrization(m, Axis::X, QQ(3));
    QuadElt u = par.lambda + ZZ(2);
    for (int i = 0; i < 5; ++i) {
        Point<QuadElt> lhs = fiber_generator_apply(m, Axis::X, par.evaluate(u), 1);
        c.check(lhs == par.evaluate(par.lambda * u), "twist conjugates to multiplication by lambda");
        u = u * par.lambda + QuadElt(QQ(1));
    }
    FiberPoints fp = fiber_integral_points(m, Axis::X, QQ(3), 1000);
    c.check(fp.orbits.size() == 1, "single orbit in the Pell box");
    for (auto& p : fp.all_points) {
        c.check(on_surface(torus_trace_form(m), p), "fiber point on surface");
        c.check(p.x == 3, "fiber point keeps the trace value");
    }
}

void suite_orbits(Ctx c, std::mt19937_64& rng) {
    MarkoffSurface m = from_torus(ZZ(-2));
    std::uniform_int_distribution<int> move(0, 2);
    for (int i = 0; i < 6; ++i) {
        PointZ p{ZZ(-3), ZZ(3), ZZ(3)};
        for (int j = 0; j < 3; ++j) p = vieta_move(m, static_cast<Axis>(move(rng)), p);
        auto w = orbit_equal(m, PointZ{ZZ(-3), ZZ(3), ZZ(3)}, p);
        c.check(w.has_value(), "orbit connection exists");
        if (w) c.check(apply_word(m, *w, PointZ{ZZ(-3), ZZ(3), ZZ(3)}) == p, "orbit word replays");
    }
}

void suite_dichotomy(Ctx c) {
    LatticePointProblem p1(Poly2::parse("X - Y"), QQ(4), QQ(8));
    auto r1 = classify_dichotomy(p1, 20);
    c.check(r1.subtorus && r1.invariant_x == 64 && r1.invariant_y == 64,
            "X=Y with (4,8) is a subtorus translate with invariant (64,64)");
    LatticePointProblem p2(Poly2::parse("X + Y - 3"), QQ(2), QQ(5));
    auto r2 = classify_dichotomy(p2, 50);
    c.check(!r2.subtorus && r2.solutions.size() == 1 && r2.solutions[0] == std::pair<long, long>{1, 0},
            "X+Y=3 with (2,5) is finite {(1,0)}");
}

void suite_roundtrip(Ctx c, std::mt19937_64& rng) {
    std::uniform_int_distribution<long long> big(-1000000000, 1000000000);
    std::uniform_int_distribution<long> den(1, 100000);
    for (int i = 0; i < 100; ++i) {
        ZZ z(big(rng));
        z *= big(rng);
        c.check(parse_zz(to_string(z)) == z, "integer parse-print identity");
        QQ q(ZZ(big(rng)), ZZ(den(rng)));
        c.check(parse_qq(to_string(q)) == q, "rational parse-print identity");
    }
}

} // namespace

SelfTestReport run_selftest(std::uint64_t seed) {
    SelfTestReport rep;
    std::mt19937_64 rng(seed);
    suite_valuations({rep, "valuations"}, rng);
    suite_lambda({rep, "lambda"});
    suite_moves({rep, "moves"}, rng);
    suite_fricke({rep, "fricke"});
    suite_lengths({rep, "lengths"}, rng);
    suite_fiber({rep, "fiber"});
    suite_orbits({rep, "orbits"}, rng);
    suite_dichotomy({rep, "dichotomy"});
    suite_roundtrip({rep, "roundtrip"}, rng);
    return rep;
}

} // namespace markoff
