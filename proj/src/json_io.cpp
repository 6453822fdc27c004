#include "markoff/json_io.hpp"

#include <sstream>

namespace markoff {

json to_json(const ZZ& z) { return z.str(); }
json to_json(const QQ& q) { return to_string(q); }

json to_json(const QuadElt& e) {
    return json{{"D", e.D().str()}, {"r", to_string(e.r())}, {"s", to_string(e.s())}};
}

json to_json(const QuadInt& e) { return to_json(e.to_elt()); }

json to_json(const MarkoffSurface& s) {
    json j{{"eps", s.eps},
           {"a", s.a.str()},
           {"b", s.b.str()},
           {"c", s.c.str()},
           {"d", s.d.str()}};
    if (s.is_torus()) {
        j["provenance"] = json{{"type", "torus"}, {"k", s.torus_k().str()}};
        j["trace_form"] = "x^2+y^2+z^2-xyz-2=k under the involution x -> -x";
    } else if (s.is_sphere()) {
        const auto& sp = std::get<SphereProvenance>(s.provenance);
        j["provenance"] = json{{"type", "sphere"},
                               {"k", json::array({sp.k1.str(), sp.k2.str(), sp.k3.str(), sp.k4.str()})}};
    } else {
        j["provenance"] = json{{"type", "raw"}};
    }
    return j;
}

json to_json(const PointZ& p) {
    return json{{"x", p.x.str()}, {"y", p.y.str()}, {"z", p.z.str()}};
}

json to_json(const Point<QuadInt>& p) {
    return json{{"x", to_json(p.x)}, {"y", to_json(p.y)}, {"z", to_json(p.z)}};
}

json to_json(const Sym& g) {
    return json{{"perm", json::array({g.perm[0], g.perm[1], g.perm[2]})},
                {"signs", json::array({g.sign[0], g.sign[1], g.sign[2]})}};
}

json to_json(const MoveWord& w) {
    json arr = json::array();
    for (const auto& st : w) {
        if (auto* ax = std::get_if<Axis>(&st.step)) arr.push_back(json{{"move", axis_name(*ax)}});
        else arr.push_back(json{{"sym", to_json(std::get<Sym>(st.step))}});
    }
    return arr;
}

json to_json(const Slope& sl) { return sl.str(); }

json to_json(const ConicCoeffs& c) {
    return json::array({"1", to_string(c.uv), "1", to_string(c.lu), to_string(c.lv), to_string(c.c0)});
}

json to_json(const FiberDescriptor& d) {
    json j{{"axis", axis_name(d.axis)},
           {"t", to_string(d.t)},
           {"class", d.cls == FiberClass::Perfect ? "perfect" : "parabolic"}};
    switch (d.reason) {
        case ParabolicReason::TracePm2: j["reason"] = "t=±2"; break;
        case ParabolicReason::ReducibleFactor: j["reason"] = "reducible-factor"; break;
        case ParabolicReason::None: j["reason"] = nullptr; break;
    }
    j["conic"] = to_json(d.conic);
    if (d.lambda) j["lambda"] = to_json(*d.lambda);
    return j;
}

json to_json(const FiberPoints& fp) {
    json orbits = json::array();
    for (const auto& o : fp.orbits)
        orbits.push_back(json{{"rep", to_json(o.rep)},
                              {"period", o.period},
                              {"points_in_box", o.size_in_box}});
    json sporadic = json::array();
    for (const auto& p : fp.sporadic) sporadic.push_back(to_json(p));
    json all = json::array();
    for (const auto& p : fp.all_points) all.push_back(to_json(p));
    json j = to_json(fp.descriptor);
    j["orbits"] = orbits;
    j["sporadic"] = sporadic;
    j["points"] = all;
    return j;
}

json to_json(const FamilyPoint& f) {
    auto poly = [](const Poly<QuadElt>& p) {
        json arr = json::array();
        for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
        return arr;
    };
    return json{{"x", poly(f.x)}, {"y", poly(f.y)}, {"z", poly(f.z)}, {"variable", "T"}};
}

json to_json(const OrbitGeneratorInfo& o) {
    return json{{"rep", to_json(o.rep)},
                {"axis", axis_name(o.axis)},
                {"t", to_string(o.t)},
                {"period", o.period},
                {"points_in_box", o.size_in_box}};
}

json to_json(const SolutionSet& s) {
    json pts = json::array();
    for (const auto& p : s.finite_points) pts.push_back(to_json(p));
    json fams = json::array();
    for (const auto& f : s.families) fams.push_back(to_json(f));
    json orbits = json::array();
    for (const auto& o : s.orbit_generators) orbits.push_back(to_json(o));
    json od = json::array();
    for (const auto& p : s.od_points) od.push_back(to_json(p));
    return json{{"finite_points", pts},
                {"families", fams},
                {"orbit_generators", orbits},
                {"od_points", od},
                {"certified", s.certified},
                {"search_bound", s.search_bound},
                {"note", s.note}};
}

json to_json(const DichotomyResult& r) {
    json sols = json::array();
    for (auto& [m, n] : r.solutions) sols.push_back(json::array({m, n}));
    if (!r.subtorus)
        return json{{"tag", "finite"}, {"solutions", sols}, {"bound", r.bound}};
    return json{{"tag", "subtorus-translate"},
                {"d", r.torus.d},
                {"e", r.torus.e},
                {"base", json::array({to_string(r.torus.u0), to_string(r.torus.v0)})},
                {"invariant_element", json::array({to_string(r.invariant_x), to_string(r.invariant_y)})},
                {"progression_step", json::array({r.step_m, r.step_n})},
                {"solutions", sols},
                {"bound", r.bound}};
}

json to_json(const Poly2& f) {
    json arr = json::array();
    for (auto& [e, c] : f.terms())
        arr.push_back(json{{"cx", to_string(c)}, {"dx", e.first}, {"dy", e.second}});
    return arr;
}

Poly2 poly2_from_json(const json& j) {
    if (!j.is_array()) throw precondition_error("sparse polynomial must be a JSON array");
    Poly2 f;
    for (auto& term : j) {
        QQ c = parse_qq(term.at("cx").get<std::string>());
        f = f + Poly2::monomial(c, term.at("dx").get<int>(), term.at("dy").get<int>());
    }
    return f;
}

PointZ point_from_json(const json& j) {
    auto get = [&](const char* k) {
        const auto& v = j.at(k);
        if (v.is_string()) return parse_zz(v.get<std::string>());
        return ZZ(v.get<long long>());
    };
    return PointZ{get("x"), get("y"), get("z")};
}

QuadElt quadelt_from_json(const json& j) {
    ZZ d = parse_zz(j.at("D").get<std::string>());
    QQ r = parse_qq(j.at("r").get<std::string>());
    QQ s = parse_qq(j.at("s").get<std::string>());
    if (d == 0) {
        if (s != 0) throw precondition_error("rational QuadElt must have s = 0");
        return QuadElt(r);
    }
    return QuadElt(r, s, d);
}

PointZ parse_point(const std::string& csv) {
    std::stringstream ss(csv);
    std::string tok;
    std::vector<ZZ> vals;
    while (std::getline(ss, tok, ',')) vals.push_back(parse_zz(tok));
    if (vals.size() != 3) throw precondition_error("point must be 'x,y,z': " + csv);
    return PointZ{vals[0], vals[1], vals[2]};
}

} // namespace markoff
