// Command-line front end: every library operation behind one binary with a
// single JSON document on stdout. Exit codes: 0 success, 2 precondition /
// malformed input, 3 search-bound exceeded.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "markoff/json_io.hpp"
#include "markoff/selftest.hpp"

using namespace markoff;

namespace {

int default_workers() {
    if (const char* env = std::getenv("MARKOFF_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1 && w <= 256) return w;
    }
    return 1;
}

MarkoffSurface parse_surface(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon == std::string::npos ? spec.size() : colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    auto split = [&](const std::string& s) {
        std::vector<ZZ> vals;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) vals.push_back(parse_zz(tok));
        return vals;
    };
    if (kind == "torus") {
        auto v = split(rest);
        if (v.size() != 1) throw precondition_error("torus surface spec: torus:<k>");
        return from_torus(v[0]);
    }
    if (kind == "sphere") {
        auto v = split(rest);
        if (v.size() != 4) throw precondition_error("sphere surface spec: sphere:<k1,k2,k3,k4>");
        return from_sphere(v[0], v[1], v[2], v[3]);
    }
    if (kind == "raw") {
        auto v = split(rest);
        if (v.size() != 5) throw precondition_error("raw surface spec: raw:<eps,a,b,c,d>");
        if (v[0] != 1 && v[0] != -1) throw precondition_error("eps must be +1 or -1");
        return from_raw(v[0] == 1 ? 1 : -1, v[1], v[2], v[3], v[4]);
    }
    throw precondition_error("surface spec must start with torus:, sphere: or raw:");
}

// univariate polynomial in T with integer coefficients
Poly<QQ> parse_upoly(const std::string& text) {
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    std::vector<QQ> coeffs;
    auto add = [&](int deg, const QQ& c) {
        if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1, QQ(0));
        coeffs[deg] += c;
    };
    int sign = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) sign = (text[i++] == '-') ? -1 : 1;
    while (true) {
        skip();
        QQ coef(1);
        bool saw = false;
        std::string digits;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i++];
        if (!digits.empty()) {
            coef = QQ(parse_zz(digits));
            saw = true;
        }
        int deg = 0;
        skip();
        if (i < text.size() && text[i] == '*') { ++i; skip(); }
        if (i < text.size() && (text[i] == 'T' || text[i] == 't')) {
            ++i;
            deg = 1;
            saw = true;
            skip();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip();
                std::string d;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) d += text[i++];
                if (d.empty()) throw precondition_error("missing exponent in polynomial");
                deg = std::stoi(d);
            }
        }
        if (!saw) throw precondition_error("expected a term in polynomial: " + text);
        add(deg, QQ(sign) * coef);
        skip();
        if (i >= text.size()) break;
        if (text[i] == '+') { sign = 1; ++i; }
        else if (text[i] == '-') { sign = -1; ++i; }
        else throw precondition_error("unexpected character in polynomial: " + text.substr(i));
    }
    return Poly<QQ>(coeffs);
}

RatFunc parse_ratfunc(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (ch != '(' && ch != ')') s += ch;
    auto slash = s.find('/');
    if (slash == std::string::npos) return RatFunc(parse_upoly(s));
    return RatFunc(parse_upoly(s.substr(0, slash)), parse_upoly(s.substr(slash + 1)));
}

Place parse_place(const std::string& spec) {
    if (spec == "inf" || spec == "infinity") return FuncFieldInfinity{};
    if (spec.rfind("point:", 0) == 0) return FuncFieldPoint{parse_qq(spec.substr(6))};
    return PAdicPlace{parse_zz(spec)};
}

Mat2<Valued> parse_matrix(const std::string& text, const Place& place) {
    // [[a,b],[c,d]] with rational entries (p-adic place) or polynomial
    // fractions in T (function-field places)
    std::vector<std::string> entries;
    std::string cur;
    int depth = 0;
    for (char ch : text) {
        if (ch == '[') { ++depth; continue; }
        if (ch == ']') { --depth; if (!cur.empty()) { entries.push_back(cur); cur.clear(); } continue; }
        if (ch == ',' && depth <= 1) continue;
        if (ch == ',') { entries.push_back(cur); cur.clear(); continue; }
        if (!std::isspace(static_cast<unsigned char>(ch))) cur += ch;
    }
    if (!cur.empty()) entries.push_back(cur);
    if (entries.size() != 4) throw precondition_error("matrix must be [[a,b],[c,d]]");
    auto entry = [&](const std::string& e) {
        if (std::holds_alternative<PAdicPlace>(place)) return Valued(place, parse_qq(e));
        return Valued(place, parse_ratfunc(e));
    };
    return Mat2<Valued>{entry(entries[0]), entry(entries[1]), entry(entries[2]), entry(entries[3])};
}

json config_echo(const SolveConfig& cfg, std::uint64_t seed) {
    return json{{"H", cfg.H},
                {"slope_bound", cfg.slope_bound},
                {"workers", cfg.workers},
                {"od_box", cfg.od_box},
                {"seed", seed}};
}

void emit(const json& doc, const std::string& out_path) {
    std::string text = doc.dump(2) + "\n";
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw precondition_error("cannot open output path " + out_path);
        f << text;
    }
}

RingSpec parse_ring(const std::string& s) {
    if (s == "z" || s == "Z") return RingSpec::integers();
    if (s.rfind("od:", 0) == 0) return RingSpec::od(parse_zz(s.substr(3)));
    throw precondition_error("ring must be 'z' or 'od:<d>'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Diophantine toolkit for Markoff-type cubic surfaces"};
    app.require_subcommand(1);

    std::string surface_spec, point_spec, from_spec, to_spec, axis_spec = "x";
    std::string constraint, param_x, param_y, param_z, matrix_spec, place_spec = "2";
    std::string f_spec, out_path, ring_spec = "z", slope_spec = "1/0", t_spec = "0";
    std::string vx = "0", vy = "0", vz = "0";
    long H = 100, depth = 40, M = 50, gen_n = 1, slope_bound = 50;
    long long od_box = 3;
    std::uint64_t seed = 20250809;
    int workers = default_workers();

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--workers", workers, "worker thread count (env MARKOFF_WORKERS)");
        cmd->add_option("--out", out_path, "also write the JSON document to this path");
    };

    auto* c_surface = app.add_subcommand("surface", "normalize and print a surface");
    c_surface->add_option("--surface", surface_spec, "torus:<k> | sphere:<k1,k2,k3,k4> | raw:<eps,a,b,c,d>")->required();
    add_common(c_surface);

    auto* c_descend = app.add_subcommand("descend", "greedy max-norm descent of an integral point");
    c_descend->add_option("--surface", surface_spec)->required();
    c_descend->add_option("--point", point_spec, "x,y,z")->required();
    add_common(c_descend);

    auto* c_orbit = app.add_subcommand("orbit", "connect two points by moves and symmetries");
    c_orbit->add_option("--surface", surface_spec)->required();
    c_orbit->add_option("--from", from_spec, "x,y,z")->required();
    c_orbit->add_option("--to", to_spec, "x,y,z")->required();
    c_orbit->add_option("--depth", depth);
    add_common(c_orbit);

    auto* c_enum = app.add_subcommand("enumerate", "descend-minimal points in a box, up to symmetry");
    c_enum->add_option("--surface", surface_spec)->required();
    c_enum->add_option("--H", H);
    add_common(c_enum);

    auto* c_fiber = app.add_subcommand("fiber", "fiber classification and dynamics");
    c_fiber->require_subcommand(1);
    auto* cf_classify = c_fiber->add_subcommand("classify", "perfect/parabolic classification");
    auto* cf_conic = c_fiber->add_subcommand("conic", "induced conic in the free variables");
    auto* cf_orbit = c_fiber->add_subcommand("orbit", "apply the twist generator n times");
    auto* cf_points = c_fiber->add_subcommand("points", "integral points and orbit decomposition");
    auto* cf_param = c_fiber->add_subcommand("parabolic-param", "polynomial family on a parabolic fiber");
    for (auto* sub : {cf_classify, cf_conic, cf_orbit, cf_points, cf_param}) {
        sub->add_option("--surface", surface_spec)->required();
        sub->add_option("--axis", axis_spec, "x|y|z");
        sub->add_option("--t", t_spec, "trace value (trace coordinates for torus)");
        add_common(sub);
    }
    cf_orbit->add_option("--point", point_spec, "on-fiber point, working coordinates")->required();
    cf_orbit->add_option("--n", gen_n, "generator power (negative allowed)");
    cf_points->add_option("--H", H);

    auto* c_curve = app.add_subcommand("curve", "curves on the surface");
    c_curve->require_subcommand(1);
    auto* cc_classify = c_curve->add_subcommand("classify", "integrable / nonintegrable");
    auto* cc_solve = c_curve->add_subcommand("solve", "integral points on the curve");
    for (auto* sub : {cc_classify, cc_solve}) {
        sub->add_option("--surface", surface_spec)->required();
        sub->add_option("--constraint", constraint, "implicit integer polynomial in x,y,z (canonical coords)");
        sub->add_option("--param-x", param_x, "parametrized curve: x(T)");
        sub->add_option("--param-y", param_y, "parametrized curve: y(T)");
        sub->add_option("--param-z", param_z, "parametrized curve: z(T)");
        sub->add_option("--slope-bound", slope_bound);
        add_common(sub);
    }
    cc_solve->add_option("--H", H);
    cc_solve->add_option("--ring", ring_spec, "z | od:<d>[,<d>...]");
    cc_solve->add_option("--od-box", od_box, "coefficient box for O_d scans");

    auto* c_solve = app.add_subcommand("solve", "integral solutions under polynomial constraints");
    c_solve->add_option("--surface", surface_spec)->required();
    std::vector<std::string> constraints;
    c_solve->add_option("--constraint", constraints, "repeatable polynomial constraint");
    c_solve->add_option("--H", H);
    c_solve->add_option("--slope-bound", slope_bound);
    add_common(c_solve);

    auto* c_slope = app.add_subcommand("slope", "slope traces on the once-punctured torus");
    c_slope->require_subcommand(1);
    auto* cs_trace = c_slope->add_subcommand("trace", "trace along a slope from a trace triple");
    cs_trace->add_option("--slope", slope_spec, "p/q")->required();
    cs_trace->add_option("--x", vx);
    cs_trace->add_option("--y", vy);
    cs_trace->add_option("--z", vz);
    add_common(cs_trace);
    auto* cs_poly = c_slope->add_subcommand("poly", "trace polynomial of a slope");
    cs_poly->add_option("--slope", slope_spec, "p/q")->required();
    add_common(cs_poly);

    auto* c_tree = app.add_subcommand("tree", "Bruhat-Tits translation lengths");
    c_tree->require_subcommand(1);
    auto* ct_len = c_tree->add_subcommand("length", "translation length of a det-1 matrix");
    ct_len->add_option("--p", place_spec, "prime, or 'inf' / 'point:<alpha>' for Q(T)");
    ct_len->add_option("--place", place_spec, "same as --p");
    ct_len->add_option("--matrix", matrix_spec, "[[a,b],[c,d]]")->required();
    add_common(ct_len);

    auto* c_systole = app.add_subcommand("systole", "first slope with integral trace");
    std::string mat_a, mat_b;
    c_systole->add_option("--p", place_spec, "prime, or 'inf' / 'point:<alpha>'");
    c_systole->add_option("--place", place_spec, "same as --p");
    c_systole->add_option("--x", vx, "trace of A");
    c_systole->add_option("--y", vy, "trace of B");
    c_systole->add_option("--z", vz, "trace of AB");
    c_systole->add_option("--A", mat_a, "matrix [[a,b],[c,d]] (alternative to traces)");
    c_systole->add_option("--B", mat_b, "matrix [[a,b],[c,d]]");
    c_systole->add_option("--slope-bound", slope_bound);
    add_common(c_systole);

    auto* c_lattice = app.add_subcommand("torus-lattice", "lattice points (x^m, y^n) on plane curves");
    c_lattice->require_subcommand(1);
    auto* cl_classify = c_lattice->add_subcommand("classify", "finite vs subtorus-translate dichotomy");
    auto* cl_solve = c_lattice->add_subcommand("solve", "enumerate f(x^m, y^n) = 0 in a box");
    for (auto* sub : {cl_classify, cl_solve}) {
        sub->add_option("--f", f_spec, "polynomial in X, Y")->required();
        sub->add_option("--x", vx)->required();
        sub->add_option("--y", vy)->required();
        sub->add_option("--M", M);
        add_common(sub);
    }

    auto* c_selftest = app.add_subcommand("selftest", "run the invariant suites");
    c_selftest->add_option("--seed", seed);
    add_common(c_selftest);

    CLI11_PARSE(app, argc, argv);

    SolveConfig cfg;
    cfg.H = H;
    cfg.slope_bound = slope_bound;
    cfg.workers = workers;
    cfg.od_box = static_cast<i64>(od_box);

    try {
        json doc;
        doc["config"] = config_echo(cfg, seed);

        if (*c_surface) {
            doc["command"] = "surface";
            doc["result"] = to_json(parse_surface(surface_spec));
        } else if (*c_descend) {
            doc["command"] = "descend";
            MarkoffSurface s = parse_surface(surface_spec);
            auto res = descend(s, parse_point(point_spec));
            doc["result"] = json{{"point", to_json(res.point)}, {"word", to_json(res.word)}};
        } else if (*c_orbit) {
            doc["command"] = "orbit";
            MarkoffSurface s = parse_surface(surface_spec);
            OrbitSearchConfig ocfg;
            ocfg.depth = depth;
            auto w = orbit_equal(s, parse_point(from_spec), parse_point(to_spec), ocfg);
            if (w) doc["result"] = json{{"connected", true}, {"word", to_json(*w)}};
            else doc["result"] = json{{"connected", false}};
        } else if (*c_enum) {
            doc["command"] = "enumerate";
            MarkoffSurface s = parse_surface(surface_spec);
            json pts = json::array();
            for (auto& p : enumerate_minimal(s, H, workers)) {
                json jp{{"point", to_json(p)}};
                if (s.is_torus()) jp["trace_coords"] = to_json(PointZ{-p.x, p.y, p.z});
                bool fixed = true;
                for (Axis ax : {Axis::X, Axis::Y, Axis::Z})
                    if (vieta_move(s, ax, p) != p) fixed = false;
                if (fixed) jp["degenerate"] = "fixed by all moves";
                if (s.is_torus() || s.is_sphere()) {
                    json flags = json::array();
                    PointZ tp = s.is_torus() ? PointZ{-p.x, p.y, p.z} : p;
                    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                        auto d = classify_fiber(s, ax, QQ(tp[ax]));
                        if (d.cls == FiberClass::Parabolic)
                            flags.push_back(std::string(axis_name(ax)) + "=" + to_string(QQ(tp[ax])));
                    }
                    if (!flags.empty()) jp["parabolic_fibers"] = flags;
                }
                pts.push_back(jp);
            }
            doc["result"] = json{{"surface", to_json(s)}, {"minimal_points", pts}};
        } else if (*c_fiber) {
            MarkoffSurface s = parse_surface(surface_spec);
            Axis ax = axis_from_name(axis_spec);
            QQ t = parse_qq(t_spec);
            if (*cf_classify) {
                doc["command"] = "fiber classify";
                doc["result"] = to_json(classify_fiber(s, ax, t));
            } else if (*cf_conic) {
                doc["command"] = "fiber conic";
                doc["result"] = to_json(fiber_conic(s, ax, t));
            } else if (*cf_orbit) {
                doc["command"] = "fiber orbit";
                PointZ p = parse_point(point_spec);
                doc["result"] = to_json(fiber_generator_apply(s, ax, p, gen_n));
            } else if (*cf_points) {
                doc["command"] = "fiber points";
                doc["result"] = to_json(fiber_integral_points(s, ax, t, H, workers));
            } else {
                doc["command"] = "fiber parabolic-param";
                doc["result"] = to_json(parametrize_parabolic_fiber(s, ax, t));
            }
        } else if (*c_curve) {
            MarkoffSurface s = parse_surface(surface_spec);
            CurveOnSurface curve = [&] {
                if (!constraint.empty()) return CurveOnSurface::implicit(s, parse_tripoly(constraint));
                if (param_x.empty() || param_y.empty() || param_z.empty())
                    throw precondition_error("provide --constraint or all of --param-x/y/z");
                auto lift = [](const Poly<QQ>& p) {
                    std::vector<QuadElt> cs;
                    for (auto& c : p.coeffs()) cs.emplace_back(c);
                    return Poly<QuadElt>(cs);
                };
                FamilyPoint fam{lift(parse_upoly(param_x)), lift(parse_upoly(param_y)),
                                lift(parse_upoly(param_z))};
                return CurveOnSurface::parametrized(s, fam);
            }();
            if (*cc_classify) {
                doc["command"] = "curve classify";
                auto cls = classify_curve(curve, slope_bound);
                json j{{"integrable", cls.integrable}};
                if (cls.integrable) {
                    j["slope"] = cls.slope->str();
                    j["value"] = to_json(cls.value);
                    j["full_fiber"] = cls.full_fiber;
                } else {
                    json w = json::array();
                    for (auto& p : cls.witnesses) w.push_back(to_json(p));
                    j["witnesses"] = w;
                }
                doc["result"] = j;
            } else {
                doc["command"] = "curve solve";
                if (ring_spec.rfind("od:", 0) == 0 && ring_spec.find(',') != std::string::npos) {
                    // d_list: run the O_d scan for each listed d
                    json by_d = json::object();
                    std::stringstream ss(ring_spec.substr(3));
                    std::string tok;
                    while (std::getline(ss, tok, ',')) {
                        SolutionSet sol = solve_curve_integral(curve, RingSpec::od(parse_zz(tok)), cfg);
                        by_d[tok] = to_json(sol);
                    }
                    doc["result"] = json{{"od_results", by_d}};
                } else {
                    doc["result"] = to_json(solve_curve_integral(curve, parse_ring(ring_spec), cfg));
                }
            }
        } else if (*c_solve) {
            doc["command"] = "solve";
            MarkoffSurface s = parse_surface(surface_spec);
            std::vector<TriPoly> cs;
            for (auto& c : constraints) cs.push_back(parse_tripoly(c));
            SolutionSet sol = corollary5_solve(s, cs, cfg);
            json j = to_json(sol);
            if (s.is_torus()) {
                // report the trace-presentation twins of the finite points
                json tw = json::array();
                for (auto& p : sol.finite_points) tw.push_back(to_json(PointZ{-p.x, p.y, p.z}));
                j["finite_points_trace_coords"] = tw;
            }
            doc["result"] = j;
        } else if (*c_slope) {
            Slope sl = Slope::parse(slope_spec);
            if (*cs_trace) {
                doc["command"] = "slope trace";
                QQ r = trace_of_slope<QQ>(sl, parse_qq(vx), parse_qq(vy), parse_qq(vz));
                doc["result"] = json{{"slope", sl.str()}, {"trace", to_string(r)}};
            } else {
                doc["command"] = "slope poly";
                doc["result"] = json{{"slope", sl.str()}, {"polynomial", trace_polynomial(sl).str()}};
            }
        } else if (*c_tree) {
            doc["command"] = "tree length";
            Place pl = parse_place(place_spec);
            Mat2<Valued> g = parse_matrix(matrix_spec, pl);
            doc["result"] = json{{"length", translation_length(g)}};
        } else if (*c_systole) {
            doc["command"] = "systole";
            Place pl = parse_place(place_spec);
            auto val = [&](const std::string& sv) {
                if (std::holds_alternative<PAdicPlace>(pl)) return Valued(pl, parse_qq(sv));
                return Valued(pl, parse_ratfunc(sv));
            };
            SystoleHit hit = (!mat_a.empty() || !mat_b.empty())
                                 ? systole_search(parse_matrix(mat_a, pl), parse_matrix(mat_b, pl),
                                                  slope_bound)
                                 : systole_search(val(vx), val(vy), val(vz), slope_bound);
            doc["result"] = json{{"slope", hit.slope.str()},
                                 {"trace", hit.trace.str()},
                                 {"valuation", hit.valuation == std::numeric_limits<long>::max()
                                                   ? json("infinity")
                                                   : json(hit.valuation)}};
        } else if (*c_lattice) {
            Poly2 f = (!f_spec.empty() && f_spec.front() == '[')
                          ? poly2_from_json(json::parse(f_spec))
                          : Poly2::parse(f_spec);
            LatticePointProblem prob(f, parse_qq(vx), parse_qq(vy));
            if (*cl_classify) {
                doc["command"] = "torus-lattice classify";
                json j = to_json(classify_dichotomy(prob, M));
                j["f"] = to_json(prob.f);
                doc["result"] = j;
            } else {
                doc["command"] = "torus-lattice solve";
                json sols = json::array();
                for (auto& [m, n] : exponential_solutions(prob, M))
                    sols.push_back(json::array({m, n}));
                doc["result"] = json{{"f", to_json(prob.f)}, {"solutions", sols}, {"bound", M}};
            }
        } else if (*c_selftest) {
            doc["command"] = "selftest";
            SelfTestReport rep = run_selftest(seed);
            json fails = json::array();
            for (auto& f : rep.failures) fails.push_back(f);
            doc["result"] = json{{"checks", rep.checks}, {"failures", fails}, {"ok", rep.ok()}};
            emit(doc, out_path);
            return rep.ok() ? 0 : 1;
        }

        emit(doc, out_path);
        return 0;
    } catch (const precondition_error& e) {
        json err{{"error", e.what()}, {"kind", "precondition"}};
        std::cout << err.dump(2) << "\n";
        return 2;
    } catch (const bound_error& e) {
        json err{{"error", e.what()}, {"kind", "bound-exceeded"}};
        std::cout << err.dump(2) << "\n";
        return 3;
    } catch (const std::exception& e) {
        json err{{"error", e.what()}, {"kind", "internal"}};
        std::cout << err.dump(2) << "\n";
        return 2;
    }
}
