#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "markoff/fibers.hpp"

using namespace markoff;

namespace {

PointZ pt(long x, long y, long z) { return PointZ{ZZ(x), ZZ(y), ZZ(z)}; }

} // namespace

TEST_CASE("fiber classification on the torus") {
    MarkoffSurface k7 = from_torus(ZZ(7));
    auto d1 = classify_fiber(k7, Axis::X, QQ(3));
    CHECK(d1.cls == FiberClass::Parabolic);
    CHECK(d1.reason == ParabolicReason::ReducibleFactor);

    auto d2 = classify_fiber(from_torus(ZZ(0)), Axis::X, QQ(2));
    CHECK(d2.cls == FiberClass::Parabolic);
    CHECK(d2.reason == ParabolicReason::TracePm2);

    CHECK(classify_fiber(from_torus(ZZ(0)), Axis::X, QQ(3)).cls == FiberClass::Perfect);

    // the (1,1,k=2) exceptional clause: k=2 fibers with t != ±2 stay perfect
    CHECK(classify_fiber(from_torus(ZZ(2)), Axis::X, QQ(2)).cls == FiberClass::Parabolic);
    for (long t = -6; t <= 6; ++t) {
        if (t == 2 || t == -2) continue;
        CHECK(classify_fiber(from_torus(ZZ(2)), Axis::X, QQ(t)).cls == FiberClass::Perfect);
    }

    CHECK_THROWS_AS(classify_fiber(from_raw(1, ZZ(0), ZZ(0), ZZ(0), ZZ(0)), Axis::X, QQ(3)),
                    precondition_error);
}

TEST_CASE("fiber classification on the sphere") {
    MarkoffSurface s0 = from_sphere(ZZ(0), ZZ(0), ZZ(0), ZZ(0));
    CHECK(classify_fiber(s0, Axis::X, QQ(3)).cls == FiberClass::Perfect);
    CHECK(classify_fiber(s0, Axis::X, QQ(2)).cls == FiberClass::Parabolic);
    // factor k1^2+k2^2+t^2-t*k1*k2-4 with (2,2): t^2-4t+4 = 0 at t=2 only;
    // with (0,0): t^2 = 4. pick k = (1,1,0,0), axis x: factor1 = t^2-t-2 = 0
    // at t = -1, 2
    MarkoffSurface s1 = from_sphere(ZZ(1), ZZ(1), ZZ(0), ZZ(0));
    auto dx = classify_fiber(s1, Axis::X, QQ(-1));
    CHECK(dx.cls == FiberClass::Parabolic);
    CHECK(dx.reason == ParabolicReason::ReducibleFactor);
    // same k on axis y pairs (k2,k3) = (1,0): factor t^2-3 never rational zero
    CHECK(classify_fiber(s1, Axis::Y, QQ(-1)).cls == FiberClass::Perfect);
}

TEST_CASE("fiber conic") {
    // torus k=-2, t=3: u^2 - 3uv + v^2 + 9, contains (3,3)
    ConicCoeffs c = fiber_conic(from_torus(ZZ(-2)), Axis::X, QQ(3));
    CHECK(c.uv == -3);
    CHECK(c.lu == 0);
    CHECK(c.c0 == 9);
    QQ u(3), v(3);
    CHECK(u * u + c.uv * u * v + v * v + c.lu * u + c.lv * v + c.c0 == 0);

    ConicCoeffs c2 = fiber_conic(from_torus(ZZ(5)), Axis::Y, QQ(0));
    CHECK(c2.uv == 0);
    CHECK(c2.c0 == -7);  // u^2+v^2-2-k

    ConicCoeffs c3 = fiber_conic(from_sphere(ZZ(0), ZZ(0), ZZ(0), ZZ(0)), Axis::X, QQ(0));
    CHECK(c3.uv == 0);
    CHECK(c3.lu == 0);
    CHECK(c3.c0 == -4);  // u^2+v^2 = 4
}

TEST_CASE("fiber generator on the Pell fiber") {
    MarkoffSurface m = from_torus(ZZ(-2));
    // trace coordinates: the fiber x = 3 on x^2+y^2+z^2-xyz-2 = -2
    PointZ p = pt(3, 3, 3);
    CHECK(fiber_generator_apply(m, Axis::X, p, 1) == pt(3, 3, 6));
    CHECK(fiber_generator_apply(m, Axis::X, p, 2) == pt(3, 6, 15));
    CHECK(fiber_generator_apply(m, Axis::X, p, 0) == p);
    PointZ far = fiber_generator_apply(m, Axis::X, p, 7);
    CHECK(on_surface(torus_trace_form(m), far));
    CHECK(far.x == 3);
    CHECK(fiber_generator_apply(m, Axis::X, far, -7) == p);
    CHECK_THROWS_AS(fiber_generator_apply(m, Axis::X, pt(3, 1, 1), 1), precondition_error);

    // the half twist squares to the two-move composition
    FiberFrame fr = fiber_frame(m, Axis::X);
    REQUIRE(fr.half);
    PointZ twice = fiber_generator_step(fr, fiber_generator_step(fr, p, false), false);
    PointZ composed = vieta_move(fr.work, fr.second, vieta_move(fr.work, fr.first, p));
    CHECK(twice == composed);
}

TEST_CASE("perfect fiber parametrization and the lambda action") {
    MarkoffSurface m = from_torus(ZZ(-2));
    TorusFiberParam par = fiber_parametrization(m, Axis::X, QQ(3));
    CHECK(par.lambda == QuadElt(QQ(3, 2), QQ(1, 2), ZZ(5)));
    CHECK(par.c == -9);
    CHECK(par.exponent == 1);

    // u mapping to (3,3): u = y - lambda*z at (3,3)
    QuadElt u0 = QuadElt(QQ(3)) - par.lambda * ZZ(3);
    CHECK(par.evaluate(u0) == Point<QuadElt>{QuadElt(QQ(3)), QuadElt(QQ(3)), QuadElt(QQ(3))});
    // generator corresponds to multiplication by lambda
    Point<QuadElt> g1 = fiber_generator_apply(m, Axis::X, par.evaluate(u0), 1);
    CHECK(g1 == par.evaluate(par.lambda * u0));

    // conjugation identity at 10 sample points
    QuadElt u = par.lambda + ZZ(1);
    for (int i = 0; i < 10; ++i) {
        Point<QuadElt> lhs = fiber_generator_apply(m, Axis::X, par.evaluate(u), 1);
        CHECK(lhs == par.evaluate(par.lambda * u));
        u = u * par.lambda + QuadElt(QQ(i));
        if (u.is_zero()) u = par.lambda;
    }

    // t=0, k=0: lambda = i, factorization constant k+2-t^2 = 2
    TorusFiberParam p2 = fiber_parametrization(from_torus(ZZ(0)), Axis::X, QQ(0));
    CHECK(p2.lambda == QuadElt(QQ(0), QQ(1), ZZ(-1)));
    CHECK(p2.c == 2);

    CHECK_THROWS_AS(fiber_parametrization(m, Axis::X, QQ(2)), precondition_error);
    // k=7, t=3 is parabolic (reducible): no torus parametrization
    CHECK_THROWS_AS(fiber_parametrization(from_torus(ZZ(7)), Axis::X, QQ(3)), precondition_error);
}

TEST_CASE("parabolic fiber families") {
    auto check_family = [](const MarkoffSurface& s, Axis ax, const QQ& t) {
        Point<Poly<QuadElt>> fam = parametrize_parabolic_fiber(s, ax, t);
        FiberFrame fr = fiber_frame(s, ax);
        REQUIRE(ring_is_zero(eval(fr.work, fam)));
        CHECK(fam[ax] == Poly<QuadElt>(QuadElt(t)));
        CHECK((fam[fr.first].degree() > 0 || fam[fr.second].degree() > 0));
        // exact on-fiber check at 5 parameter values
        for (int i = -2; i <= 2; ++i) {
            QuadElt ti{QQ(i)};
            Point<QuadElt> p{fam.x.eval(ti), fam.y.eval(ti), fam.z.eval(ti)};
            CHECK(on_surface(fr.work, p));
        }
        return fam;
    };

    // k=2, t=2: the family (2, T, T)
    auto f1 = check_family(from_torus(ZZ(2)), Axis::X, QQ(2));
    CHECK(f1.y == Poly<QuadElt>::var());
    CHECK(f1.z == Poly<QuadElt>::var());

    // k=6, t=2: (2, T+2, T)
    auto f2 = check_family(from_torus(ZZ(6)), Axis::X, QQ(2));
    CHECK(f2.y == Poly<QuadElt>::var() + Poly<QuadElt>(QuadElt(QQ(2))));

    // k=7, t=3: lines (3, lambda*T, T) with lambda^2-3*lambda+1 = 0
    auto f3 = check_family(from_torus(ZZ(7)), Axis::X, QQ(3));
    QuadElt lam = f3.y.leading();
    CHECK(lam * lam - ZZ(3) * lam + QuadElt(QQ(1)) == QuadElt(QQ(0)));

    // torus t=-2 and sphere cases
    check_family(from_torus(ZZ(6)), Axis::X, QQ(-2));
    check_family(from_torus(ZZ(0)), Axis::Y, QQ(2));
    check_family(from_sphere(ZZ(0), ZZ(0), ZZ(0), ZZ(0)), Axis::X, QQ(2));
    check_family(from_sphere(ZZ(1), ZZ(2), ZZ(0), ZZ(1)), Axis::X, QQ(2));
    check_family(from_sphere(ZZ(1), ZZ(1), ZZ(0), ZZ(0)), Axis::X, QQ(-1));
    check_family(from_sphere(ZZ(2), ZZ(2), ZZ(1), ZZ(1)), Axis::Y, QQ(-2));

    CHECK_THROWS_AS(parametrize_parabolic_fiber(from_torus(ZZ(0)), Axis::X, QQ(3)),
                    precondition_error);
}

TEST_CASE("classification agrees with the parametrization oracle (base grid)") {
    for (long k = -6; k <= 6; ++k) {
        for (long t = -6; t <= 6; ++t) {
            auto desc = classify_fiber(from_torus(ZZ(k)), Axis::X, QQ(t));
            bool parabolic = desc.cls == FiberClass::Parabolic;
            bool family_ok = true;
            try {
                parametrize_parabolic_fiber(from_torus(ZZ(k)), Axis::X, QQ(t));
            } catch (const precondition_error&) {
                family_ok = false;
            }
            CHECK(parabolic == family_ok);
            if (t != 2 && t != -2)
                CHECK((desc.cls == FiberClass::Perfect) ==
                      (degeneracy_defect(from_torus(ZZ(k)), Axis::X, QQ(t)) != 0));
        }
    }
}

TEST_CASE("fiber integral points: hyperbolic fiber orbits") {
    MarkoffSurface m = from_torus(ZZ(-2));
    FiberPoints fp = fiber_integral_points(m, Axis::X, QQ(3), 20);
    REQUIRE(fp.orbits.size() == 1);
    CHECK(fp.orbits[0].rep == pt(3, 3, 3));
    CHECK(fp.orbits[0].period == 0);
    // the box holds (3,3),(3,6),(6,3),(6,15),(15,6) and their negatives
    CHECK(fp.all_points.size() == 10);
    bool has336 = false, has3615 = false;
    for (auto& p : fp.all_points) {
        if (p == pt(3, 3, 6)) has336 = true;
        if (p == pt(3, 6, 15)) has3615 = true;
    }
    CHECK(has336);
    CHECK(has3615);
    // every box point satisfies the surface equation and the axis value
    MarkoffSurface w = torus_trace_form(m);
    for (auto& p : fp.all_points) {
        CHECK(on_surface(w, p));
        CHECK(p.x == 3);
    }
}

TEST_CASE("fiber integral points: elliptic fibers are finite and closed") {
    MarkoffSurface m0 = from_torus(ZZ(0));
    FiberPoints fp = fiber_integral_points(m0, Axis::X, QQ(0), 10);
    // u^2+v^2 = 2: the four points (±1,±1)
    CHECK(fp.sporadic.size() == 4);
    FiberFrame fr = fiber_frame(m0, Axis::X);
    for (auto& p : fp.sporadic) {
        PointZ q = fiber_generator_step(fr, p, false);
        CHECK(std::find(fp.sporadic.begin(), fp.sporadic.end(), q) != fp.sporadic.end());
    }
    for (auto& orb : fp.orbits) CHECK(orb.period > 0);

    FiberPoints fp2 = fiber_integral_points(from_torus(ZZ(-2)), Axis::X, QQ(0), 10);
    REQUIRE(fp2.all_points.size() == 1);
    CHECK(fp2.all_points[0] == pt(0, 0, 0));

    // non-integer trace: no integral points
    CHECK(fiber_integral_points(m0, Axis::X, QQ(1, 2), 10).all_points.empty());
}

TEST_CASE("twist reachability within the box (small criterion-4 slice)") {
    MarkoffSurface m = from_torus(ZZ(-2));
    i64 H = 100000;
    FiberPoints fp = fiber_integral_points(m, Axis::X, QQ(3), H);
    REQUIRE(fp.orbits.size() == 1);
    PointZ rep = fp.orbits[0].rep;
    FiberFrame fr = fiber_frame(m, Axis::X);
    std::vector<Sym> fsyms;
    for (const auto& g : symmetries(fr.work))
        if (g.perm[0] == 0 && g.sign[0] == 1) fsyms.push_back(g);
    std::set<std::array<long, 3>> reach;
    auto put = [&](const PointZ& p) {
        reach.insert({static_cast<long>(p.x), static_cast<long>(p.y), static_cast<long>(p.z)});
    };
    for (int dir = 0; dir < 2; ++dir) {
        PointZ walk = rep;
        for (int step = 0; step <= 40; ++step) {
            for (auto& g : fsyms) put(g.apply(walk));
            walk = fiber_generator_step(fr, walk, dir == 1);
            if (max_norm(walk) > 8 * H) break;
        }
    }
    for (auto& p : fp.all_points)
        CHECK(reach.count({static_cast<long>(p.x), static_cast<long>(p.y), static_cast<long>(p.z)}));
}

TEST_CASE("points over O_d") {
    MarkoffSurface m = from_torus(ZZ(-2));
    auto pts = points_over_Od(m, ZZ(1), 3);
    bool has_zero = false, has_markoff = false;
    for (auto& p : pts) {
        if (p.x.is_zero() && p.y.is_zero() && p.z.is_zero()) has_zero = true;
        if (p == Point<QuadInt>{QuadInt(ZZ(1), ZZ(-3), ZZ(0)), QuadInt(ZZ(1), ZZ(3), ZZ(0)),
                                QuadInt(ZZ(1), ZZ(3), ZZ(0))})
            has_markoff = true;
        // every reported point satisfies the equation exactly
        CHECK(ring_is_zero(eval(m, p)));
    }
    CHECK(has_zero);
    CHECK(has_markoff);

    // (+1,0,0,0,4) over Z[i]: contains the class of (-2, 2i, 2i)
    MarkoffSurface s4 = from_raw(1, ZZ(0), ZZ(0), ZZ(0), ZZ(4));
    auto pts4 = points_over_Od(s4, ZZ(1), 2);
    Point<QuadInt> target{QuadInt(ZZ(1), ZZ(-2), ZZ(0)), QuadInt(ZZ(1), ZZ(0), ZZ(2)),
                          QuadInt(ZZ(1), ZZ(0), ZZ(2))};
    bool found = false;
    for (auto& p : pts4)
        if (p == target) found = true;
    CHECK(found);

    // H=0 box: only the origin if it lies on the surface
    auto ptsz = points_over_Od(from_torus(ZZ(-2)), ZZ(1), 0);
    REQUIRE(ptsz.size() == 1);
    CHECK(ptsz[0].x.is_zero());

    // half-basis ring: O_3 points on x^2+y^2+z^2+xyz = 4 include
    // ((1+sqrt(-3))/2, conj, -1)-type classes; just check exactness+dedup
    auto pts3 = points_over_Od(s4, ZZ(3), 2);
    for (auto& p : pts3) CHECK(ring_is_zero(eval(s4, p)));
    CHECK_THROWS_AS(points_over_Od(m, ZZ(4), 2), precondition_error);
}
