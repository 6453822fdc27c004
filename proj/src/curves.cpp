#include "markoff/curves.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace markoff {

namespace {

using PQ = Poly<QuadElt>;

bool torus_like(const MarkoffSurface& s) { return s.is_torus(); }

// canonical <-> trace coordinates (torus: negate x)
FamilyPoint family_to_trace(const MarkoffSurface& s, const FamilyPoint& f) {
    if (!torus_like(s)) return f;
    return {-f.x, f.y, f.z};
}
FamilyPoint family_to_canonical(const MarkoffSurface& s, const FamilyPoint& f) {
    return family_to_trace(s, f);  // the involution is its own inverse
}
PointZ point_to_trace(const MarkoffSurface& s, const PointZ& p) {
    if (!torus_like(s)) return p;
    return {-p.x, p.y, p.z};
}
PointZ point_to_canonical(const MarkoffSurface& s, const PointZ& p) { return point_to_trace(s, p); }

bool family_is_constant(const FamilyPoint& f) {
    return f.x.is_constant() && f.y.is_constant() && f.z.is_constant();
}

// g == c * (coord - v)? Returns (axis, v) for single-coordinate linear g.
std::optional<std::pair<Axis, QQ>> axis_form(const TriPoly& g) {
    if (g.is_zero() || g.total_degree() != 1) return std::nullopt;
    ZZ c[3] = {0, 0, 0}, c0 = 0;
    for (auto& [e, coef] : g.terms()) {
        int total = e[0] + e[1] + e[2];
        if (total == 0) c0 = coef;
        else
            for (int i = 0; i < 3; ++i)
                if (e[i] == 1) c[i] = coef;
    }
    int nz = (c[0] != 0) + (c[1] != 0) + (c[2] != 0);
    if (nz != 1) return std::nullopt;
    for (int i = 0; i < 3; ++i)
        if (c[i] != 0) {
            ZZ num = -c0;
            return std::make_pair(static_cast<Axis>(i), make_qq(num, c[i]));
        }
    return std::nullopt;
}

QQ trace_value_of_axis(const MarkoffSurface& s, Axis ax, const QQ& canonical_value) {
    if (torus_like(s) && ax == Axis::X) return -canonical_value;
    return canonical_value;
}
QQ canonical_value_of_trace(const MarkoffSurface& s, Axis ax, const QQ& t) {
    return trace_value_of_axis(s, ax, t);  // involution again
}

// ---- integral points of a polynomial family ----

struct FamilySplit {
    std::array<Poly<QQ>, 3> rat;  // rational parts
    std::array<Poly<QQ>, 3> irr;  // coefficients of sqrt(D)
    ZZ D = 0;
};

FamilySplit split_family(const FamilyPoint& f) {
    FamilySplit out;
    const PQ* comp[3] = {&f.x, &f.y, &f.z};
    for (int i = 0; i < 3; ++i) {
        std::vector<QQ> r, s;
        for (auto& c : comp[i]->coeffs()) {
            r.push_back(c.r());
            s.push_back(c.s());
            if (c.D() != 0) {
                if (out.D != 0 && out.D != c.D())
                    throw precondition_error("family mixes quadratic fields");
                out.D = c.D();
            }
        }
        out.rat[i] = Poly<QQ>(r);
        out.irr[i] = Poly<QQ>(s);
    }
    return out;
}

ZZ lcm_z(const ZZ& a, const ZZ& b) { return a / gcd(a, b) * b; }

ZZ denominator_lcm(const std::array<Poly<QQ>, 3>& ps) {
    ZZ m = 1;
    for (auto& p : ps)
        for (auto& c : p.coeffs()) m = lcm_z(m, denominator(c));
    return m;
}

Poly<QuadElt> to_quad_poly(const Poly<QQ>& p) {
    std::vector<QuadElt> cs;
    for (auto& c : p.coeffs()) cs.emplace_back(c);
    return Poly<QuadElt>(cs);
}

// Rational-coefficient family: find the arithmetic progressions of integer
// parameters along which every coordinate is integral, after locating a
// unimodular parameter certificate (some ±coordinate or sum of two
// coordinates equal to ±T + const). Returns reparametrized integer families.
std::vector<FamilyPoint> rational_family_points(const std::array<Poly<QQ>, 3>& rat) {
    // certificate: an integer combination of coordinates that is ±T + c
    std::optional<QQ> shift;  // T = ±(N - c): represent T = sgn*N + off
    long sgn = 1;
    QQ off;
    auto try_cert = [&](const Poly<QQ>& p) {
        if (shift) return;
        if (p.degree() != 1) return;
        QQ lead = p[1];
        if (lead != 1 && lead != -1) return;
        sgn = (lead == 1) ? 1 : -1;
        off = -p[0] * lead;  // T = sgn*N + off with N the integer value
        shift = off;
    };
    for (auto& p : rat) try_cert(p);
    for (int i = 0; i < 3 && !shift; ++i)
        for (int j = i + 1; j < 3 && !shift; ++j) {
            try_cert(rat[i] + rat[j]);
            if (!shift) try_cert(rat[i] - rat[j]);
        }
    if (!shift)
        throw bound_error("family integrality analysis: no unimodular parameter certificate");

    // substitute T = sgn*N + off, then filter residues of N mod the
    // denominator lcm; deg+1 consecutive integral samples certify the class
    std::array<Poly<QQ>, 3> in_n;
    Poly<QQ> nvar = Poly<QQ>(std::vector<QQ>{off, QQ(sgn)});
    int maxdeg = 0;
    for (int i = 0; i < 3; ++i) {
        in_n[i] = rat[i].eval<Poly<QQ>>(nvar);
        maxdeg = std::max(maxdeg, in_n[i].degree());
    }
    ZZ M = denominator_lcm(in_n);
    if (M > 10000) throw bound_error("family integrality analysis: modulus too large");
    long m = static_cast<long>(M);

    std::vector<FamilyPoint> out;
    for (long r = 0; r < m; ++r) {
        bool ok = true;
        for (long k = 0; k <= maxdeg && ok; ++k) {
            QQ n(r + m * k);
            for (int i = 0; i < 3; ++i)
                if (!is_integer(in_n[i].eval(n))) { ok = false; break; }
        }
        if (!ok) continue;
        // N = r + m*K
        Poly<QQ> sub = Poly<QQ>(std::vector<QQ>{QQ(r), QQ(m)});
        FamilyPoint fam{to_quad_poly(in_n[0].eval<Poly<QQ>>(sub)),
                        to_quad_poly(in_n[1].eval<Poly<QQ>>(sub)),
                        to_quad_poly(in_n[2].eval<Poly<QQ>>(sub))};
        out.push_back(fam);
    }
    return out;
}

struct FamilySolutions {
    std::vector<FamilyPoint> families;  // same coordinates as the input family
    std::vector<PointZ> points;
};

// Exact integral points on the image of a one-parameter polynomial family.
FamilySolutions integral_points_of_family(const FamilyPoint& fam) {
    FamilySolutions out;
    FamilySplit sp = split_family(fam);
    bool irrational = false;
    for (auto& p : sp.irr)
        if (!p.is_zero()) irrational = true;

    if (!irrational) {
        out.families = rational_family_points(sp.rat);
        return out;
    }

    // irrational linear families: T = p + q*sqrt(D); each coordinate's
    // sqrt(D)-part must vanish, giving linear conditions in (p, q)
    for (int i = 0; i < 3; ++i)
        if (sp.rat[i].degree() > 1 || sp.irr[i].degree() > 1)
            throw bound_error("irrational family integrality analysis needs a linear family");

    // coordinate i = (a_i + b_i sqrt(D)) T + (c_i + e_i sqrt(D))
    // sqrt-part at T = p + q sqrt(D):  b_i p + a_i q + e_i = 0
    struct Row {
        QQ bp, aq, e;
    };
    std::vector<Row> rows;
    for (int i = 0; i < 3; ++i) {
        QQ a = sp.rat[i][1], b = sp.irr[i][1], e = sp.irr[i][0];
        if (a == 0 && b == 0 && e != 0) return out;  // constant irrational coordinate
        if (a != 0 || b != 0 || e != 0) rows.push_back({b, a, e});
    }
    // solve the linear system rows * (p, q)^T = -e exactly
    std::optional<std::pair<QQ, QQ>> sol;
    for (size_t i = 0; i < rows.size() && !sol; ++i)
        for (size_t j = i + 1; j < rows.size() && !sol; ++j) {
            QQ det = rows[i].bp * rows[j].aq - rows[j].bp * rows[i].aq;
            if (det == 0) continue;
            QQ p = (-rows[i].e * rows[j].aq + rows[j].e * rows[i].aq) / det;
            QQ q = (-rows[i].bp * rows[j].e + rows[j].bp * rows[i].e) / det;
            sol = std::make_pair(p, q);
        }
    if (!sol) {
        // coefficient rank <= 1: inconsistent rows mean no integral points;
        // a consistent line of solutions is beyond desk analysis
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = i + 1; j < rows.size(); ++j) {
                if (rows[i].bp * rows[j].e - rows[j].bp * rows[i].e != 0 ||
                    rows[i].aq * rows[j].e - rows[j].aq * rows[i].e != 0)
                    return out;  // inconsistent: the sqrt-parts cannot all vanish
            }
        throw bound_error("irrational family integrality analysis: a line of parameter solutions");
    }
    auto [p, q] = *sol;
    // verify all sqrt-parts vanish, then integrality of rational parts
    for (auto& r : rows)
        if (r.bp * p + r.aq * q + r.e != 0) return out;
    PointZ candidate;
    ZZ* slot[3] = {&candidate.x, &candidate.y, &candidate.z};
    for (int i = 0; i < 3; ++i) {
        // rational part: a_i p + b_i q D + c_i
        QQ a = sp.rat[i][1], b = sp.irr[i][1], c = sp.rat[i][0];
        QQ v = a * p + b * q * QQ(sp.D) + c;
        if (!is_integer(v)) return out;
        *slot[i] = zz_of(v);
    }
    out.points.push_back(candidate);
    return out;
}

} // namespace

CurveOnSurface CurveOnSurface::parametrized(const MarkoffSurface& s, const FamilyPoint& coords) {
    if (family_is_constant(coords))
        throw precondition_error("parametrized curve must be nonconstant");
    if (!ring_is_zero(eval(s, coords)))
        throw precondition_error("parametrized curve does not lie on the surface");
    return CurveOnSurface{s, ParamShape{coords}};
}

CurveOnSurface CurveOnSurface::implicit(const MarkoffSurface& s, const TriPoly& g) {
    if (g.is_zero()) throw precondition_error("implicit curve needs a nonzero polynomial");
    TriPoly sp = s.poly();
    // reject multiples of the surface polynomial (degree <= 3 suffices at desk scale)
    if (g.total_degree() == 3) {
        const ZZ& glead = g.terms().rbegin()->second;
        const ZZ& slead = sp.terms().rbegin()->second;
        TriPoly cross = g * TriPoly(slead) - sp * TriPoly(glead);
        if (cross.is_zero())
            throw precondition_error("constraint polynomial is a multiple of the surface equation");
    }
    return CurveOnSurface{s, ImplicitShape{g}};
}

CurveClassification classify_curve(const CurveOnSurface& c, long slope_bound, i64 sample_box) {
    const MarkoffSurface& s = c.surface;
    if (!s.is_torus() && !s.is_sphere())
        throw precondition_error("classify_curve: no moduli interpretation for raw surfaces");

    CurveClassification out;
    if (c.is_parametrized()) {
        const FamilyPoint& fam = std::get<ParamShape>(c.shape).coords;
        FamilyPoint tf = family_to_trace(s, fam);
        if (s.is_torus()) {
            Slope sl = constant_trace_slope(tf, slope_bound);  // throws bound_error if none
            out.integrable = true;
            out.slope = sl;
            out.value = trace_of_slope<PQ>(sl, tf.x, tf.y, tf.z).constant_term();
            return out;
        }
        // sphere: the coordinates are the candidate trace functions
        for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
            if (tf[ax].is_constant()) {
                out.integrable = true;
                out.slope = axis_slope(ax);
                out.value = tf[ax].constant_term();
                return out;
            }
        }
        out.integrable = false;
        return out;
    }

    const TriPoly& g = std::get<ImplicitShape>(c.shape).g;
    if (auto af = axis_form(g)) {
        out.integrable = true;
        out.full_fiber = true;
        out.slope = axis_slope(af->first);
        out.value = QuadElt(trace_value_of_axis(s, af->first, af->second));
        return out;
    }

    // certified deep fibers: g proportional to trace_poly(slope) - t
    if (s.is_torus()) {
        TriPoly g_trace = g.remap({0, 1, 2}, {-1, 1, 1});
        int gdeg = g_trace.total_degree();
        for (const Slope& sl : slopes_up_to(std::min(slope_bound, 3L * gdeg + 3))) {
            if (sl.order() < 2) continue;  // axis_form covered 1/0 and 0/1... keep 1/1 too
            TriPoly tp = trace_polynomial(sl);
            if (tp.total_degree() != gdeg) continue;
            if (tp.terms().rbegin()->first != g_trace.terms().rbegin()->first) continue;
            const ZZ& lg = g_trace.terms().rbegin()->second;
            const ZZ& lt = tp.terms().rbegin()->second;
            TriPoly cross = g_trace * TriPoly(lt) - tp * TriPoly(lg);
            if (!cross.is_constant()) continue;
            out.integrable = true;
            out.full_fiber = true;
            out.slope = sl;
            ZZ num = -cross.constant_value();
            out.value = QuadElt(make_qq(num, lg));
            return out;
        }
    }

    // sample integral points of {surface = 0, g = 0}
    std::vector<PointZ> samples;
    for (auto& t : surface_box_points(s, sample_box))
        if (g.eval_zz(ZZ(t.x), ZZ(t.y), ZZ(t.z)) == 0) samples.push_back(to_pointz(t));
    if (samples.size() < 2)
        throw precondition_error("undetermined: not enough rational sample points on the implicit curve");

    std::vector<Slope> candidates;
    if (s.is_torus()) candidates = slopes_up_to(slope_bound);
    else candidates = {Slope(1, 0), Slope(0, 1), Slope(1, 1)};

    for (const Slope& sl : candidates) {
        bool constant = true;
        QQ first;
        PointZ w1, w2;
        bool have_first = false;
        for (const auto& p : samples) {
            PointZ tp = point_to_trace(s, p);
            QQ v;
            if (s.is_torus()) v = QQ(trace_of_slope<ZZ>(sl, tp.x, tp.y, tp.z));
            else v = QQ(tp[static_cast<Axis>(sl == Slope(1, 0) ? 0 : (sl == Slope(0, 1) ? 1 : 2))]);
            if (!have_first) {
                first = v;
                w1 = p;
                have_first = true;
            } else if (v != first) {
                constant = false;
                w2 = p;
                break;
            }
        }
        if (constant)
            throw precondition_error(
                "undetermined: trace " + sl.str() +
                " is constant on all sampled points but the curve is not a coordinate fiber; "
                "cannot certify integrability");
        out.witnesses.push_back(w1);
        out.witnesses.push_back(w2);
    }
    out.integrable = false;
    return out;
}

std::vector<InfinityWitness> infinity_witnesses(const CurveOnSurface& c, long slope_bound) {
    if (!c.is_parametrized())
        throw precondition_error("infinity_witnesses needs a parametrized curve");
    const MarkoffSurface& s = c.surface;
    FamilyPoint tf = family_to_trace(s, std::get<ParamShape>(c.shape).coords);
    std::vector<Slope> candidates =
        s.is_sphere() ? std::vector<Slope>{Slope(1, 0), Slope(0, 1), Slope(1, 1)}
                      : slopes_up_to(slope_bound);
    for (const Slope& sl : candidates) {
        PQ composed = s.is_sphere()
                          ? tf[static_cast<Axis>(sl == Slope(1, 0) ? 0 : (sl == Slope(0, 1) ? 1 : 2))]
                          : trace_of_slope<PQ>(sl, tf.x, tf.y, tf.z);
        // place valuation at T -> infinity of a polynomial: -degree; >= 0
        // exactly for constants (value 0 for the zero polynomial)
        if (composed.is_constant()) {
            InfinityWitness w{FuncFieldInfinity{}, sl, composed.constant_term()};
            // post-hoc valuation check on the rational path
            if (w.value.is_rational() && !w.value.is_zero()) {
                RatFunc rf{w.value.rational_value()};
                if (place_valuation(rf, w.place) < 0)
                    throw std::logic_error("witness trace fails its valuation bound");
            }
            return {w};
        }
    }
    throw bound_error("infinity_witnesses: witness bound exceeded at slope_bound " +
                      std::to_string(slope_bound));
}

namespace {

void append_fiber_results(SolutionSet& out, const MarkoffSurface& s, Axis axis, const QQ& t,
                          const SolveConfig& cfg) {
    FiberDescriptor desc = classify_fiber(s, axis, t);
    if (desc.cls == FiberClass::Perfect) {
        if (!is_integer(t)) {
            out.certified = true;
            out.note = "perfect fiber with non-integer trace: no integral points";
            return;
        }
        FiberPoints fp = fiber_integral_points(s, axis, t, cfg.H, cfg.workers);
        if (t > 2 || t < -2) {
            for (auto& orb : fp.orbits) {
                OrbitGeneratorInfo info;
                info.rep = point_to_canonical(s, orb.rep);
                info.axis = axis;
                info.t = t;
                info.period = orb.period;
                info.size_in_box = orb.size_in_box;
                out.orbit_generators.push_back(info);
            }
            out.certified = true;
            out.note = "orbit generators of the twist action on a hyperbolic perfect fiber";
        } else {
            for (auto& p : fp.all_points) out.finite_points.push_back(point_to_canonical(s, p));
            // elliptic conic: certified when the box provably covers it
            ConicCoeffs cc = fiber_conic(s, axis, t);
            ZZ L = abs_z(zz_of(cc.lu)) + abs_z(zz_of(cc.lv));
            ZZ wminus = 2 - abs_z(zz_of(cc.uv));
            ZZ rad = isqrt_floor(L * L + 2 * wminus * abs_z(zz_of(cc.c0))) + 1;
            ZZ bound = (L + rad) / wminus + 1;
            out.certified = ZZ(cfg.H) >= bound;
            out.note = "finite elliptic fiber; completeness bound " + bound.str();
        }
        return;
    }
    // parabolic fiber: explicit polynomial components
    for (auto& comp : parabolic_fiber_components(s, axis, t)) {
        FamilyPoint canon = family_to_canonical(s, comp);
        FamilySolutions sols = integral_points_of_family(canon);
        for (auto& f : sols.families) out.families.push_back(f);
        for (auto& p : sols.points) out.finite_points.push_back(p);
    }
    out.certified = true;
    out.note = "parabolic fiber solved through its polynomial components";
}

void dedupe_points(std::vector<PointZ>& pts) {
    std::sort(pts.begin(), pts.end(), lex_less);
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

} // namespace

SolutionSet solve_curve_integral(const CurveOnSurface& c, const RingSpec& ring,
                                 const SolveConfig& cfg) {
    if (cfg.H < 1) throw precondition_error("solve_curve_integral requires H >= 1");
    const MarkoffSurface& s = c.surface;
    SolutionSet out;
    out.search_bound = cfg.H;

    CurveClassification cls = classify_curve(c, cfg.slope_bound);

    if (!cls.integrable) {
        if (c.is_parametrized())
            throw bound_error(
                "nonintegrable parametrized polynomial curve: a constant trace exists by the "
                "structure theory, so the slope bound is too small");
        const TriPoly& g = std::get<ImplicitShape>(c.shape).g;
        if (ring.imaginary_quadratic) {
            for (auto& p : points_over_Od(s, ring.d, cfg.od_box)) {
                QuadInt v = g.eval<QuadInt>(p.x, p.y, p.z,
                                            [&](const ZZ& cz) { return QuadInt::from_int(ring.d, cz); });
                if (v.is_zero()) out.od_points.push_back(p);
            }
            out.certified = false;
            out.note = "box-complete O_d search on a nonintegrable curve";
            return out;
        }
        for (auto& t : surface_box_points(s, cfg.H, cfg.workers))
            if (g.eval_zz(ZZ(t.x), ZZ(t.y), ZZ(t.z)) == 0) out.finite_points.push_back(to_pointz(t));
        out.certified = false;
        out.note = "box-complete search on a nonintegrable curve";
        return out;
    }

    // integrable: an irrational constant trace admits no integral points
    if (!cls.value.is_rational()) {
        out.certified = !ring.imaginary_quadratic;
        out.note = "constant trace value is irrational";
        return out;
    }
    QQ t = cls.value.rational_value();

    if (c.is_parametrized()) {
        // the curve's integral points come from the family itself
        FamilySolutions sols =
            integral_points_of_family(std::get<ParamShape>(c.shape).coords);
        if (ring.imaginary_quadratic)
            throw precondition_error("O_d solving of parametrized curves is not supported");
        out.families = sols.families;
        out.finite_points = sols.points;
        dedupe_points(out.finite_points);
        out.certified = true;
        out.note = "integral points of the parametrizing family";
        return out;
    }

    // implicit integrable
    auto [word, axis] = slope_to_axis_word(*cls.slope);

    if (ring.imaginary_quadratic) {
        if (!word.empty())
            throw precondition_error("O_d solving is supported for coordinate fibers only");
        if (!is_integer(t)) {
            out.note = "non-integer trace: no O_d points on the fiber";
            return out;
        }
        QQ cv = canonical_value_of_trace(s, axis, t);
        for (auto& p : points_over_Od(s, ring.d, cfg.od_box)) {
            QuadInt want = QuadInt::from_int(ring.d, zz_of(cv));
            if (p[axis] == want) out.od_points.push_back(p);
        }
        out.certified = false;
        out.note = "box-complete O_d points on the fiber";
        return out;
    }

    if (word.empty()) {
        append_fiber_results(out, s, axis, t, cfg);
        dedupe_points(out.finite_points);
        return out;
    }

    // deep slope: trace(slope; p) == trace(axis; word(p)), so the curve is
    // word^{-1} of the coordinate fiber: solve there and map back
    if (!cls.full_fiber)
        throw precondition_error("undetermined: integrable implicit curve is not a full fiber");
    MarkoffSurface work = torus_like(s) ? torus_trace_form(s) : s;
    SolutionSet inner;
    inner.search_bound = cfg.H;
    append_fiber_results(inner, s, axis, t, cfg);
    const TriPoly& g_orig = std::get<ImplicitShape>(c.shape).g;
    MoveWord winv = inverse_word(word);
    for (auto& p : inner.finite_points) {
        PointZ tp = point_to_trace(s, p);
        PointZ back = point_to_canonical(s, apply_word(work, winv, tp));
        if (g_orig.eval_zz(back.x, back.y, back.z) != 0)
            throw std::logic_error("deep-slope solution fails the original constraint");
        out.finite_points.push_back(back);
    }
    for (auto& f : inner.families) {
        FamilyPoint tf = family_to_trace(s, f);
        FamilyPoint back = apply_word(work, winv, tf, false);
        out.families.push_back(family_to_canonical(s, back));
    }
    for (auto& og : inner.orbit_generators) {
        OrbitGeneratorInfo moved = og;
        PointZ tp = point_to_trace(s, og.rep);
        moved.rep = point_to_canonical(s, apply_word(work, winv, tp));
        out.orbit_generators.push_back(moved);
    }
    out.certified = inner.certified;
    out.note = "fiber solutions conjugated back through a move word of length " +
               std::to_string(word.size());
    dedupe_points(out.finite_points);
    return out;
}

SolutionSet corollary5_solve(const MarkoffSurface& s, const std::vector<TriPoly>& constraints,
                             const SolveConfig& cfg) {
    SolutionSet out;
    out.search_bound = cfg.H;

    if (constraints.empty()) {
        for (auto& p : enumerate_minimal(s, cfg.H, cfg.workers)) out.finite_points.push_back(p);
        out.certified = false;
        out.note = "descend-minimal symmetry-class representatives (no constraints)";
        return out;
    }

    if (constraints.size() == 1) {
        try {
            CurveOnSurface c = CurveOnSurface::implicit(s, constraints[0]);
            return solve_curve_integral(c, RingSpec::integers(), cfg);
        } catch (const precondition_error&) {
            // fall through to the box search
        }
    }

    for (auto& t : surface_box_points(s, cfg.H, cfg.workers)) {
        bool ok = true;
        for (auto& g : constraints)
            if (g.eval_zz(ZZ(t.x), ZZ(t.y), ZZ(t.z)) != 0) { ok = false; break; }
        if (ok) out.finite_points.push_back(to_pointz(t));
    }
    out.certified = false;
    out.note = "box-complete search over the constraint locus";
    return out;
}

} // namespace markoff
