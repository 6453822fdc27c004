#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "markoff/enumerate.hpp"
#include "markoff/surface.hpp"

using namespace markoff;

namespace {

PointZ pt(long x, long y, long z) { return PointZ{ZZ(x), ZZ(y), ZZ(z)}; }

// Independent brute-force box oracle: iterate x and y, solve nothing —
// plain membership test over the full cube (kept deliberately naive).
std::set<std::array<long, 3>> cube_oracle(const MarkoffSurface& s, long H) {
    std::set<std::array<long, 3>> out;
    for (long x = -H; x <= H; ++x)
        for (long y = -H; y <= H; ++y)
            for (long z = -H; z <= H; ++z) {
                ZZ v = ZZ(x) * x + ZZ(y) * y + ZZ(z) * z;
                ZZ xyz = ZZ(x) * y * z;
                v += s.eps > 0 ? xyz : -xyz;
                v -= s.a * x + s.b * y + s.c * z + s.d;
                if (v == 0) out.insert({x, y, z});
            }
    return out;
}

// Random on-surface points: random surface through a random seed point, then
// random move words.
struct RandomOrbit {
    MarkoffSurface s;
    std::vector<PointZ> points;
};

RandomOrbit random_orbit(std::mt19937_64& rng, int n_points, int word_len) {
    std::uniform_int_distribution<long> small(-4, 4);
    std::uniform_int_distribution<int> coin(0, 1), move(0, 2);
    PointZ seed = pt(small(rng), small(rng), small(rng));
    int eps = coin(rng) ? 1 : -1;
    ZZ a(small(rng)), b(small(rng)), c(small(rng));
    ZZ xyz = seed.x * seed.y * seed.z;
    ZZ d = seed.x * seed.x + seed.y * seed.y + seed.z * seed.z + (eps > 0 ? xyz : -xyz) - a * seed.x -
           b * seed.y - c * seed.z;
    MarkoffSurface s{eps, a, b, c, d, RawProvenance{}};
    RandomOrbit out{s, {}};
    for (int i = 0; i < n_points; ++i) {
        PointZ p = seed;
        for (int j = 0; j < word_len; ++j) p = vieta_move(s, static_cast<Axis>(move(rng)), p);
        out.points.push_back(p);
    }
    return out;
}

} // namespace

TEST_CASE("surface constructors") {
    MarkoffSurface t = from_torus(ZZ(-2));
    CHECK(t.eps == 1);
    CHECK(t.a == 0);
    CHECK(t.d == 0);
    CHECK(from_torus(ZZ(2)).d == 4);
    CHECK(from_torus(ZZ(0)).d == 2);

    MarkoffSurface s0 = from_sphere(ZZ(0), ZZ(0), ZZ(0), ZZ(0));
    CHECK(s0.a == 0);
    CHECK(s0.d == 4);
    MarkoffSurface s2 = from_sphere(ZZ(2), ZZ(2), ZZ(2), ZZ(2));
    CHECK(s2.a == 8);
    CHECK(s2.b == 8);
    CHECK(s2.c == 8);
    CHECK(s2.d == -28);
    CHECK(from_sphere(ZZ(1), ZZ(0), ZZ(0), ZZ(0)).d == 3);

    // torus trace form: x -> -x carries one onto the other
    MarkoffSurface tf = torus_trace_form(t);
    PointZ p = pt(-3, 3, 3);
    CHECK(on_surface(t, p));
    CHECK(on_surface(tf, flip_x(p)));
}

TEST_CASE("eval") {
    MarkoffSurface m = from_torus(ZZ(-2));
    CHECK(eval(m, pt(-3, 3, 3)) == 0);
    CHECK(eval(m, pt(0, 0, 0)) == 0);
    CHECK(eval(from_torus(ZZ(2)), pt(0, 0, 0)) == -4);
}

TEST_CASE("vieta move") {
    MarkoffSurface m = from_torus(ZZ(-2));
    PointZ p = pt(-3, 3, 3);
    CHECK(vieta_move(m, Axis::X, p) == pt(-6, 3, 3));
    CHECK(vieta_move(m, Axis::X, vieta_move(m, Axis::X, p)) == p);
    CHECK(vieta_move(m, Axis::X, pt(0, 0, 0)) == pt(0, 0, 0));
    CHECK_THROWS_AS(vieta_move(m, Axis::X, pt(1, 1, 1)), precondition_error);
}

TEST_CASE("symmetries by symbolic substitution") {
    CHECK(symmetries(from_raw(1, ZZ(0), ZZ(0), ZZ(0), ZZ(0))).size() == 24);
    CHECK(symmetries(from_torus(ZZ(-2))).size() == 24);
    auto only_id = symmetries(from_raw(1, ZZ(1), ZZ(2), ZZ(3), ZZ(0)));
    REQUIRE(only_id.size() == 1);
    CHECK(only_id[0].is_identity());
    // a == b allows the x/y swap, nothing else
    auto swaps = symmetries(from_raw(1, ZZ(5), ZZ(5), ZZ(3), ZZ(0)));
    CHECK(swaps.size() == 2);
    bool has_swap = false;
    for (auto& g : swaps)
        if (g.perm == std::array<int, 3>{1, 0, 2}) has_swap = true;
    CHECK(has_swap);
}

TEST_CASE("descend oracle examples") {
    MarkoffSurface m = from_torus(ZZ(-2));
    auto r1 = descend(m, pt(-6, 3, 3));
    CHECK(r1.point == pt(-3, 3, 3));
    REQUIRE(r1.word.size() == 1);
    CHECK(std::get<Axis>(r1.word[0].step) == Axis::X);

    auto r2 = descend(m, pt(-3, 3, 3));
    CHECK(r2.point == pt(-3, 3, 3));
    CHECK(r2.word.empty());

    auto r3 = descend(m, pt(-15, 6, 3));
    CHECK(r3.point == pt(-3, 3, 3));
    CHECK(r3.word.size() == 2);
    // norms strictly decrease along the word
    PointZ walk = pt(-15, 6, 3);
    ZZ n = max_norm(walk);
    for (auto& st : r3.word) {
        walk = vieta_move(m, std::get<Axis>(st.step), walk);
        CHECK(max_norm(walk) < n);
        n = max_norm(walk);
    }
    CHECK(walk == r3.point);
}

TEST_CASE("involution and conservation on random orbits") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 20; ++trial) {
        auto orbit = random_orbit(rng, 24, 7);
        for (const auto& p : orbit.points) {
            REQUIRE(on_surface(orbit.s, p));
            for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                PointZ q = vieta_move(orbit.s, ax, p);
                CHECK(on_surface(orbit.s, q));
                CHECK(vieta_move(orbit.s, ax, q) == p);
            }
            auto dr = descend(orbit.s, p);
            CHECK(is_descend_minimal(orbit.s, dr.point));
            CHECK(apply_word(orbit.s, dr.word, p) == dr.point);
        }
    }
}

TEST_CASE("box kernel agrees with the cube oracle") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 6; ++trial) {
        auto orbit = random_orbit(rng, 1, 3);
        auto fast = surface_box_points(orbit.s, 12);
        std::set<std::array<long, 3>> got;
        for (auto& t : fast) got.insert({t.x, t.y, t.z});
        CHECK(got == cube_oracle(orbit.s, 12));
    }
    auto markoff = surface_box_points(from_torus(ZZ(-2)), 16);
    std::set<std::array<long, 3>> got;
    for (auto& t : markoff) got.insert({t.x, t.y, t.z});
    CHECK(got == cube_oracle(from_torus(ZZ(-2)), 16));
    // worker count must not change results
    auto par = surface_box_points(from_torus(ZZ(-2)), 16, 4);
    CHECK(par == markoff);
}

TEST_CASE("enumerate_minimal") {
    MarkoffSurface m = from_torus(ZZ(-2));
    auto reps = enumerate_minimal(m, 5);
    REQUIRE(reps.size() == 2);
    CHECK(reps[0] == pt(-3, 3, 3));
    CHECK(reps[1] == pt(0, 0, 0));

    auto reps4 = enumerate_minimal(from_torus(ZZ(2)), 2);
    bool has002 = false;
    for (auto& r : reps4)
        if (r == pt(0, 0, 2)) has002 = true;
    CHECK(has002);

    CHECK_THROWS_AS(enumerate_minimal(m, 0), precondition_error);
}

TEST_CASE("orbit_equal") {
    MarkoffSurface m = from_torus(ZZ(-2));
    auto w1 = orbit_equal(m, pt(-3, 3, 3), pt(-6, 3, 3));
    REQUIRE(w1.has_value());
    CHECK(apply_word(m, *w1, pt(-3, 3, 3)) == pt(-6, 3, 3));
    bool has_move = false;
    for (auto& st : *w1)
        if (std::holds_alternative<Axis>(st.step)) has_move = true;
    CHECK(has_move);

    auto w2 = orbit_equal(m, pt(-3, 3, 3), pt(-3, 3, 3));
    REQUIRE(w2.has_value());
    CHECK(w2->empty());

    CHECK_FALSE(orbit_equal(m, pt(0, 0, 0), pt(-3, 3, 3)).has_value());

    // a longer connection: replay always lands exactly
    PointZ far = pt(-3, 3, 3);
    for (Axis ax : {Axis::Y, Axis::X, Axis::Z, Axis::Y}) far = vieta_move(m, ax, far);
    auto w3 = orbit_equal(m, pt(-6, 3, 3), far);
    REQUIRE(w3.has_value());
    CHECK(apply_word(m, *w3, pt(-6, 3, 3)) == far);
}

TEST_CASE("move words invert") {
    std::mt19937_64 rng(77);
    auto orbit = random_orbit(rng, 6, 5);
    auto syms = symmetries(orbit.s);
    for (const auto& p : orbit.points) {
        MoveWord w;
        w.push_back({Axis::Y});
        w.push_back({syms.back()});
        w.push_back({Axis::X});
        PointZ q = apply_word(orbit.s, w, p);
        CHECK(apply_word(orbit.s, inverse_word(w), q) == p);
    }
}

TEST_CASE("orbit generation equals brute-force box enumeration") {
    // spec invariant: applying moves to the minimal points regenerates the
    // whole box (surfaces whose minimal points all have norm <= H)
    auto check = [](const MarkoffSurface& s, long H) {
        auto syms = symmetries(s);
        std::set<std::array<long, 3>> want;
        for (auto& t : surface_box_points(s, H)) want.insert({t.x, t.y, t.z});

        std::set<std::array<long, 3>> got;
        std::vector<PointZ> frontier;
        auto put = [&](const PointZ& p) {
            if (max_norm(p) > H) return false;
            std::array<long, 3> key{static_cast<long>(p.x), static_cast<long>(p.y),
                                    static_cast<long>(p.z)};
            if (got.count(key)) return false;
            got.insert(key);
            frontier.push_back(p);
            return true;
        };
        for (auto& rep : enumerate_minimal(s, H))
            for (auto& g : syms) put(g.apply(rep));
        while (!frontier.empty()) {
            PointZ p = frontier.back();
            frontier.pop_back();
            for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) put(vieta_move(s, ax, p));
        }
        CHECK(got == want);
    };
    check(from_torus(ZZ(-2)), 60);
    check(from_torus(ZZ(0)), 40);
    check(from_raw(1, ZZ(0), ZZ(0), ZZ(0), ZZ(4)), 40);
}
