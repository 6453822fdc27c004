#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <string>

#include <json.hpp>

#ifndef MARKOFF_BIN
#error "MARKOFF_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(MARKOFF_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

nlohmann::json result_of(const RunResult& r) {
    auto doc = nlohmann::json::parse(r.out);
    return doc.at("result");
}

} // namespace

TEST_CASE("tree length example") {
    auto r = run("tree length --p 2 --matrix \"[[2,0],[0,1/2]]\"");
    CHECK(r.exit_code == 0);
    CHECK(result_of(r).at("length") == 2);

    auto rf = run("tree length --p inf --matrix \"[[T,0],[0,1/T]]\"");
    CHECK(rf.exit_code == 0);
    CHECK(result_of(rf).at("length") == 2);
}

TEST_CASE("enumerate is byte-identical across worker counts") {
    auto r1 = run("enumerate --surface torus:-2 --H 200 --workers 1");
    auto r4 = run("enumerate --surface torus:-2 --H 200 --workers 4");
    CHECK(r1.exit_code == 0);
    // config echo records the worker count; compare results only
    CHECK(result_of(r1) == result_of(r4));
    auto pts = result_of(r1).at("minimal_points");
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].at("point").at("x") == "-3");
    CHECK(pts[0].at("trace_coords").at("x") == "3");
    // (0,0,0) is the degenerate orbit, fixed by every move, and its traces
    // sit on the parabolic t=0... fibers of k=-2 (0^2-2-(-2) = 0: reducible)
    CHECK(pts[1].at("point").at("x") == "0");
    CHECK(pts[1].contains("degenerate"));
    CHECK(pts[1].contains("parabolic_fibers"));
}

TEST_CASE("solve fiber example reports the orbit and trace coordinates") {
    auto r = run("solve --surface torus:-2 --constraint \"x=-3\" --H 100");
    CHECK(r.exit_code == 0);
    auto res = result_of(r);
    REQUIRE(res.at("orbit_generators").size() == 1);
    auto orb = res.at("orbit_generators")[0];
    CHECK(orb.at("rep").at("x") == "-3");
    CHECK(orb.at("t") == "3");
    CHECK(res.at("certified") == true);
}

TEST_CASE("exit codes") {
    // malformed input -> 2 with machine-readable error JSON
    auto bad = run("descend --surface torus:-2 --point \"1,1\"");
    CHECK(bad.exit_code == 2);
    auto err = nlohmann::json::parse(bad.out);
    CHECK(err.at("kind") == "precondition");

    // off-surface point -> precondition
    auto off = run("descend --surface torus:-2 --point \"1,1,1\"");
    CHECK(off.exit_code == 2);

    // bound exceeded -> 3 (systole over a triple with no integral trace in a
    // tiny slope bound: use v_2(x)=v_2(y)=v_2(z)=-1 with integral boundary)
    auto bound = run("systole --p 2 --x 5/2 --y 5/2 --z 6 --slope-bound 1");
    CHECK(bound.exit_code == 3);
    auto berr = nlohmann::json::parse(bound.out);
    CHECK(berr.at("kind") == "bound-exceeded");

    auto ok = run("systole --p 2 --x 5/2 --y 5/2 --z 6 --slope-bound 5");
    CHECK(ok.exit_code == 0);
    CHECK(result_of(ok).at("slope") == "1/1");
}

TEST_CASE("fiber subcommands") {
    auto cls = run("fiber classify --surface torus:7 --axis x --t 3");
    CHECK(cls.exit_code == 0);
    CHECK(result_of(cls).at("class") == "parabolic");
    CHECK(result_of(cls).at("reason") == "reducible-factor");

    auto orb = run("fiber orbit --surface torus:-2 --axis x --t 3 --point \"3,3,3\" --n 2");
    CHECK(orb.exit_code == 0);
    CHECK(result_of(orb).at("z") == "15");

    auto pts = run("fiber points --surface torus:-2 --axis x --t 3 --H 50");
    CHECK(pts.exit_code == 0);
    CHECK(result_of(pts).at("orbits").size() == 1);

    auto par = run("fiber parabolic-param --surface torus:2 --axis x --t 2");
    CHECK(par.exit_code == 0);
    // family (2, T, T): y coefficients [0, 1]
    CHECK(result_of(par).at("y").size() == 2);
}

TEST_CASE("slope, curve, torus-lattice and selftest round trip") {
    auto tr = run("slope trace --slope 2/1 --x 3 --y 3 --z 3");
    CHECK(tr.exit_code == 0);
    CHECK(result_of(tr).at("trace") == "6");

    auto po = run("slope poly --slope 1/2");
    CHECK(po.exit_code == 0);
    CHECK(result_of(po).at("polynomial") == "-x + y*z");

    auto cc = run("curve classify --surface sphere:0,0,0,0 --constraint \"x+y\"");
    CHECK(cc.exit_code == 0);
    CHECK(result_of(cc).at("integrable") == false);

    auto cs = run("curve solve --surface torus:-2 --constraint \"x=-3\" --H 30 --ring od:1 --od-box 3");
    CHECK(cs.exit_code == 0);
    CHECK(!result_of(cs).at("od_points").empty());

    auto tl = run("torus-lattice classify --f \"X - Y\" --x 4 --y 8 --M 20");
    CHECK(tl.exit_code == 0);
    CHECK(result_of(tl).at("tag") == "subtorus-translate");
    CHECK(result_of(tl).at("invariant_element")[0] == "64");

    auto ts = run("torus-lattice solve --f \"X + Y - 3\" --x 2 --y 5 --M 20");
    CHECK(ts.exit_code == 0);
    REQUIRE(result_of(ts).at("solutions").size() == 1);
    CHECK(result_of(ts).at("solutions")[0][0] == 1);

    auto st = run("selftest --seed 7");
    CHECK(st.exit_code == 0);
    CHECK(result_of(st).at("ok") == true);
}

#include "markoff/json_io.hpp"

TEST_CASE("json round trips") {
    using namespace markoff;
    // QuadElt: serialize -> parse is the identity (canonical D)
    for (auto e : {QuadElt(QQ(3, 2), QQ(1, 2), ZZ(5)), QuadElt(QQ(-7)), solve_lambda(QQ(0)),
                   QuadElt(QQ(1), QQ(2), ZZ(8))}) {
        CHECK(quadelt_from_json(to_json(e)) == e);
    }
    // sparse bivariate polynomials
    Poly2 f = Poly2::parse("2*X^2 - Y^3 + 1/2");
    CHECK(poly2_from_json(to_json(f)) == f);
    // integral points
    PointZ p{ZZ(-3), ZZ(3), ZZ(3)};
    CHECK(point_from_json(to_json(p)) == p);
}
