#include "markoff/fibers.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace markoff {

namespace {

int axis_index(Axis a) { return static_cast<int>(a); }

std::pair<Axis, Axis> free_axes(Axis axis) {
    switch (axis) {
        case Axis::X: return {Axis::Y, Axis::Z};
        case Axis::Y: return {Axis::X, Axis::Z};
        default: return {Axis::X, Axis::Y};
    }
}

} // namespace

FiberFrame fiber_frame(const MarkoffSurface& s, Axis axis) {
    FiberFrame fr;
    fr.work = s.is_torus() ? torus_trace_form(s) : s;
    fr.trace_coords = s.is_torus();
    fr.axis = axis;
    std::tie(fr.first, fr.second) = free_axes(axis);
    Sym swap;
    swap.perm[axis_index(fr.first)] = axis_index(fr.second);
    swap.perm[axis_index(fr.second)] = axis_index(fr.first);
    fr.swap_sym = swap;
    fr.half = is_symmetry(fr.work, swap);
    return fr;
}

ConicCoeffs fiber_conic(const MarkoffSurface& s, Axis axis, const QQ& t) {
    FiberFrame fr = fiber_frame(s, axis);
    const MarkoffSurface& w = fr.work;
    ConicCoeffs c;
    c.uv = QQ(w.eps) * t;
    c.lu = QQ(-w.linear_coeff(fr.first));
    c.lv = QQ(-w.linear_coeff(fr.second));
    c.c0 = t * t - QQ(w.linear_coeff(axis)) * t - QQ(w.d);
    return c;
}

FiberDescriptor classify_fiber(const MarkoffSurface& s, Axis axis, const QQ& t) {
    if (!s.is_torus() && !s.is_sphere())
        throw precondition_error("classify_fiber: no moduli interpretation for raw surfaces");
    FiberDescriptor out;
    out.axis = axis;
    out.t = t;
    out.conic = fiber_conic(s, axis, t);
    out.lambda = solve_lambda(t);
    if (t == 2 || t == -2) {
        out.cls = FiberClass::Parabolic;
        out.reason = ParabolicReason::TracePm2;
        return out;
    }
    bool reducible = false;
    if (s.is_torus()) {
        ZZ k = s.torus_k();
        reducible = (t * t - 2 - QQ(k) == 0) && k != 2;
    } else {
        const auto& sp = std::get<SphereProvenance>(s.provenance);
        std::array<std::pair<ZZ, ZZ>, 2> pairs;
        switch (axis) {
            case Axis::X: pairs = {{{sp.k1, sp.k2}, {sp.k3, sp.k4}}}; break;
            case Axis::Y: pairs = {{{sp.k2, sp.k3}, {sp.k1, sp.k4}}}; break;
            default: pairs = {{{sp.k1, sp.k3}, {sp.k2, sp.k4}}}; break;
        }
        for (auto& [ki, kj] : pairs) {
            QQ f = QQ(ki * ki + kj * kj) + t * t - t * QQ(ki * kj) - 4;
            if (f == 0) reducible = true;
        }
    }
    if (reducible) {
        out.cls = FiberClass::Parabolic;
        out.reason = ParabolicReason::ReducibleFactor;
    }
    return out;
}

namespace {

// m1 + m2 = lu, lam*m1 + (1/lam)*m2 = lv for the factorization
// (u + lam*v + m1)(u + 1/lam*v + m2) of u^2 + w*uv + v^2 + lu*u + lv*v.
std::pair<QuadElt, QuadElt> line_offsets(const QuadElt& lam, const QQ& lu, const QQ& lv) {
    QuadElt inv = lam.inverse();
    QuadElt det = inv - lam;
    QuadElt m1 = (QuadElt(lu) * inv - QuadElt(lv)) / det;
    QuadElt m2 = QuadElt(lu) - m1;
    return {m1, m2};
}

} // namespace

QQ degeneracy_defect(const MarkoffSurface& s, Axis axis, const QQ& t) {
    if (t == 2 || t == -2) throw precondition_error("degeneracy_defect requires t != ±2");
    ConicCoeffs c = fiber_conic(s, axis, t);
    QuadElt lam = solve_lambda(c.uv);
    auto [m1, m2] = line_offsets(lam, c.lu, c.lv);
    QuadElt defect = m1 * m2 - QuadElt(c.c0);
    if (!defect.is_rational())
        throw std::logic_error("degeneracy defect must be rational");
    return defect.rational_value();
}

Point<QuadElt> TorusFiberParam::evaluate(const QuadElt& u) const {
    if (u.is_zero()) throw precondition_error("fiber parametrization at u = 0");
    QuadElt inv = lambda.inverse();
    QuadElt second = (u - QuadElt(c) / u) / (inv - lambda);
    QuadElt first = u + lambda * second;
    Point<QuadElt> p{QuadElt(t), QuadElt(t), QuadElt(t)};
    p[frame.axis] = QuadElt(t);
    p[frame.first] = first;
    p[frame.second] = second;
    return p;
}

TorusFiberParam fiber_parametrization(const MarkoffSurface& s, Axis axis, const QQ& t) {
    if (!s.is_torus())
        throw precondition_error("fiber_parametrization is defined for torus surfaces");
    FiberDescriptor desc = classify_fiber(s, axis, t);
    if (desc.cls != FiberClass::Perfect)
        throw precondition_error("fiber_parametrization requires a perfect fiber");
    TorusFiberParam par;
    par.frame = fiber_frame(s, axis);
    par.t = t;
    par.k = QQ(s.torus_k());
    par.c = par.k + 2 - t * t;
    if (par.c == 0) throw precondition_error("degenerate conic: k+2-t^2 = 0");
    par.lambda = solve_lambda(t);

    // determine the lambda-exponent of the twist generator by conjugation
    QuadElt u0 = par.lambda + ZZ(2);
    if (u0.is_zero()) u0 = par.lambda + ZZ(3);
    Point<QuadElt> p0 = par.evaluate(u0);
    if (!on_surface(par.frame.work, p0))
        throw std::logic_error("fiber parametrization misses the surface");
    Point<QuadElt> moved = fiber_generator_step(par.frame, p0, false);
    if (moved == par.evaluate(par.lambda * u0)) par.exponent = 1;
    else if (moved == par.evaluate(par.lambda * par.lambda * u0)) par.exponent = 2;
    else throw std::logic_error("twist generator is not multiplication by lambda^e, e in {1,2}");
    return par;
}

namespace {

// One component family of a parabolic fiber; `alternate` picks the second
// line where two exist (the other square root / the conjugate line). The
// candidate is verified exactly and dropped when it misses the fiber.
std::optional<Point<Poly<QuadElt>>> parabolic_component(const MarkoffSurface& s, Axis axis,
                                                        const QQ& t, bool alternate) {
    FiberFrame fr = fiber_frame(s, axis);
    ConicCoeffs cc = fiber_conic(s, axis, t);
    const QQ& w = cc.uv;

    using PQ = Poly<QuadElt>;
    PQ T = PQ::var();
    PQ u, v;
    QuadElt sign(alternate ? QQ(-1) : QQ(1));
    if (w == -2) {
        // (u-v)^2 + lu*u + lv*v + c0 = 0 via u = v + W
        if (cc.lu + cc.lv != 0) {
            QQ den = cc.lu + cc.lv;
            std::vector<QuadElt> vc{QuadElt(-cc.c0 / den), QuadElt(-cc.lu / den), QuadElt(QQ(-1) / den)};
            v = PQ(vc);
            u = v + T;
        } else {
            QuadElt w0 = (QuadElt(-cc.lu) + sign * quad_sqrt(cc.lu * cc.lu - 4 * cc.c0)) *
                         QuadElt(QQ(1, 2));
            u = T + PQ(w0);
            v = T;
        }
    } else if (w == 2) {
        // (u+v)^2 + lu*u + lv*v + c0 = 0 via W = u + v
        if (cc.lu - cc.lv != 0) {
            QQ den = cc.lu - cc.lv;
            std::vector<QuadElt> uc{QuadElt(-cc.c0 / den), QuadElt(-cc.lv / den), QuadElt(QQ(-1) / den)};
            u = PQ(uc);
            v = T - u;
        } else {
            QuadElt w0 = (QuadElt(-cc.lv) + sign * quad_sqrt(cc.lv * cc.lv - 4 * cc.c0)) *
                         QuadElt(QQ(1, 2));
            u = T;
            v = PQ(w0) - T;
        }
    } else {
        // degenerate conic: with m1 + m2 = lu and lam*m1 + (1/lam)*m2 = lv,
        // the two lines are u + lam*v + m2 = 0 and u + (1/lam)*v + m1 = 0
        // (each offset pairs with the opposite root, from the v-coefficient
        // lam*m2 + (1/lam)*m1 of the expanded product)
        QuadElt lam = solve_lambda(w);
        auto [m1, m2] = line_offsets(lam, cc.lu, cc.lv);
        QuadElt l = alternate ? lam.inverse() : lam;
        QuadElt m = alternate ? m1 : m2;
        u = PQ(std::vector<QuadElt>{-m, -l});
        v = T;
    }

    Point<PQ> fam{PQ(QuadElt(t)), PQ(QuadElt(t)), PQ(QuadElt(t))};
    fam[fr.axis] = PQ(QuadElt(t));
    fam[fr.first] = u;
    fam[fr.second] = v;
    if (!ring_is_zero(eval(fr.work, fam))) return std::nullopt;  // not on the fiber
    if (u.is_constant() && v.is_constant()) return std::nullopt;
    return fam;
}

} // namespace

Point<Poly<QuadElt>> parametrize_parabolic_fiber(const MarkoffSurface& s, Axis axis, const QQ& t) {
    FiberDescriptor desc = classify_fiber(s, axis, t);
    if (desc.cls != FiberClass::Parabolic)
        throw precondition_error("parametrize_parabolic_fiber requires a parabolic fiber");
    auto fam = parabolic_component(s, axis, t, false);
    if (!fam) throw std::logic_error("parabolic fiber has no verified family");
    return *fam;
}

std::vector<Point<Poly<QuadElt>>> parabolic_fiber_components(const MarkoffSurface& s, Axis axis,
                                                             const QQ& t) {
    FiberDescriptor desc = classify_fiber(s, axis, t);
    if (desc.cls != FiberClass::Parabolic)
        throw precondition_error("parabolic_fiber_components requires a parabolic fiber");
    std::vector<Point<Poly<QuadElt>>> out;
    auto first = parabolic_component(s, axis, t, false);
    if (!first) throw std::logic_error("parabolic fiber has no verified family");
    out.push_back(*first);
    auto second = parabolic_component(s, axis, t, true);
    if (second && !(*second == out[0])) out.push_back(*second);
    return out;
}

std::optional<Point<Poly<QuadElt>>> try_parabolic_family(const MarkoffSurface& s, Axis axis,
                                                         const QQ& t) {
    return parabolic_component(s, axis, t, false);
}

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void unite(int i, int j) { parent[find(i)] = find(j); }
};

int neg_count(const PointZ& p) {
    return (p.x < 0 ? 1 : 0) + (p.y < 0 ? 1 : 0) + (p.z < 0 ? 1 : 0);
}

bool rep_key_less(const PointZ& a, const PointZ& b) {
    int na = neg_count(a), nb = neg_count(b);
    if (na != nb) return na < nb;
    return lex_less(a, b);
}

} // namespace

FiberPoints fiber_integral_points(const MarkoffSurface& s, Axis axis, const QQ& t, i64 H,
                                  int workers) {
    if (H < 1) throw precondition_error("fiber_integral_points requires H >= 1");
    FiberPoints out;
    out.descriptor = classify_fiber(s, axis, t);
    if (!is_integer(t)) return out;  // integral points need an integer trace

    FiberFrame fr = fiber_frame(s, axis);
    ConicCoeffs cc = fiber_conic(s, axis, t);
    auto as_i64 = [](const QQ& q, const char* what) {
        ZZ z = zz_of(q);
        if (z < -(1LL << 40) || z > (1LL << 40))
            throw precondition_error(std::string("conic coefficient too large: ") + what);
        return static_cast<i64>(z);
    };
    auto pairs = conic_box_points(as_i64(cc.uv, "uv"), as_i64(cc.lu, "lu"), as_i64(cc.lv, "lv"),
                                  as_i64(cc.c0, "c0"), H, workers);

    i64 ti = static_cast<i64>(zz_of(t));
    std::vector<PointZ> pts;
    pts.reserve(pairs.size());
    for (auto& pr : pairs) {
        PointZ p{ZZ(0), ZZ(0), ZZ(0)};
        p[axis] = ti;
        p[fr.first] = pr.u;
        p[fr.second] = pr.v;
        pts.push_back(p);
    }
    out.all_points = pts;

    // fiber-preserving symmetries: fix the axis slot and the trace value
    std::vector<Sym> fsyms;
    for (const auto& g : symmetries(fr.work)) {
        int ai = static_cast<int>(axis);
        if (g.perm[ai] != ai) continue;
        if (g.sign[ai] < 0 && ti != 0) continue;
        fsyms.push_back(g);
    }

    std::map<std::array<ZZ, 3>, int> index;
    auto key = [](const PointZ& p) { return std::array<ZZ, 3>{p.x, p.y, p.z}; };
    for (size_t i = 0; i < pts.size(); ++i) index[key(pts[i])] = static_cast<int>(i);
    auto in_box = [&](const PointZ& p) { return max_norm(p) <= H; };

    Dsu dsu(static_cast<int>(pts.size()));
    for (size_t i = 0; i < pts.size(); ++i) {
        for (bool inv : {false, true}) {
            PointZ q = fiber_generator_step(fr, pts[i], inv);
            auto it = index.find(key(q));
            if (it != index.end()) dsu.unite(static_cast<int>(i), it->second);
        }
        for (const auto& g : fsyms) {
            auto it = index.find(key(g.apply(pts[i])));
            if (it != index.end()) dsu.unite(static_cast<int>(i), it->second);
        }
    }

    std::map<int, std::vector<int>> comps;
    for (size_t i = 0; i < pts.size(); ++i) comps[dsu.find(static_cast<int>(i))].push_back(static_cast<int>(i));

    for (auto& [root, members] : comps) {
        FiberOrbit orb;
        orb.size_in_box = static_cast<long>(members.size());
        orb.rep = pts[members[0]];
        for (int m : members)
            if (rep_key_less(pts[m], orb.rep)) orb.rep = pts[m];
        // generator period of the representative (0 = infinite)
        PointZ walk = orb.rep;
        long cap = 2 * orb.size_in_box + 8;
        orb.period = 0;
        for (long step = 1; step <= cap; ++step) {
            walk = fiber_generator_step(fr, walk, false);
            if (!in_box(walk)) break;
            if (walk == orb.rep) {
                orb.period = step;
                break;
            }
        }
        out.orbits.push_back(orb);
    }
    std::sort(out.orbits.begin(), out.orbits.end(),
              [](const FiberOrbit& a, const FiberOrbit& b) { return rep_key_less(a.rep, b.rep); });

    if (t > -2 && t < 2) out.sporadic = pts;
    return out;
}

namespace {

bool quadint_neg(const QuadInt& q) { return q.a() < 0 || (q.a() == 0 && q.b() < 0); }

std::array<ZZ, 6> od_flat(const Point<QuadInt>& p) {
    return {p.x.a(), p.x.b(), p.y.a(), p.y.b(), p.z.a(), p.z.b()};
}

bool od_key_less(const Point<QuadInt>& p, const Point<QuadInt>& q) {
    int np = quadint_neg(p.x) + quadint_neg(p.y) + quadint_neg(p.z);
    int nq = quadint_neg(q.x) + quadint_neg(q.y) + quadint_neg(q.z);
    if (np != nq) return np < nq;
    return od_flat(p) < od_flat(q);
}

Point<QuadInt> od_conj(const Point<QuadInt>& p) { return {p.x.conj(), p.y.conj(), p.z.conj()}; }

} // namespace

std::vector<Point<QuadInt>> points_over_Od(const MarkoffSurface& s, const ZZ& d, i64 H) {
    if (d <= 0) throw precondition_error("points_over_Od requires d > 0");
    auto [sf, sq] = squarefree_split(d);
    (void)sq;
    if (sf != d) throw precondition_error("d must be squarefree");
    if (H < 0) throw precondition_error("points_over_Od requires H >= 0");
    if (H > 6) throw precondition_error("points_over_Od coefficient box capped at H <= 6");

    bool half = (d % 4 == 3);
    std::vector<QuadInt> values;
    for (ZZ a = -H; a <= H; ++a)
        for (ZZ b = -H; b <= H; ++b) {
            if (half && (a - b) % 2 != 0) continue;
            values.emplace_back(d, a, b);
        }

    auto syms = symmetries(s);
    std::vector<Point<QuadInt>> reps;
    for (const auto& x : values)
        for (const auto& y : values) {
            // partial evaluation: the quadratic in z has at most 2 roots, but
            // scanning z keeps the arithmetic uniform; boxes are tiny here
            for (const auto& z : values) {
                Point<QuadInt> p{x, y, z};
                if (!ring_is_zero(eval(s, p))) continue;
                Point<QuadInt> best = p;
                for (const auto& g : syms)
                    for (int cj = 0; cj < 2; ++cj) {
                        Point<QuadInt> cand = g.apply(cj ? od_conj(p) : p);
                        if (od_key_less(cand, best)) best = cand;
                    }
                reps.push_back(best);
            }
        }
    std::sort(reps.begin(), reps.end(), od_key_less);
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    return reps;
}

} // namespace markoff
