#pragma once

/// Markoff-type cubic surfaces
///     x^2 + y^2 + z^2 + eps*xyz = a*x + b*y + c*z + d,   eps = ±1,
/// their points over exact rings, Vieta moves, signed coordinate symmetries,
/// greedy max-norm descent and move words.
///
/// Torus surfaces are normalized with eps = +1; the recorded involution
/// x -> -x identifies them with the trace presentation x^2+y^2+z^2-xyz-2 = k,
/// and everything trace-flavored (slopes, fibers) speaks that presentation.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "markoff/numbers.hpp"
#include "markoff/poly.hpp"
#include "markoff/quadratic.hpp"
#include "markoff/trivariate.hpp"

namespace markoff {

// ---- ring glue ----

template <class R>
bool ring_is_zero(const R& v) {
    if constexpr (requires { v.is_zero(); }) return v.is_zero();
    else return v == 0;
}

template <class R>
R ring_scale(const R& v, const ZZ& n);  // n * v
template <class R>
R ring_shift(const R& v, const ZZ& n);  // v + n

inline ZZ ring_scale(const ZZ& v, const ZZ& n) { return v * n; }
inline ZZ ring_shift(const ZZ& v, const ZZ& n) { return v + n; }
inline QQ ring_scale(const QQ& v, const ZZ& n) { return v * QQ(n); }
inline QQ ring_shift(const QQ& v, const ZZ& n) { return v + QQ(n); }
inline QuadElt ring_scale(const QuadElt& v, const ZZ& n) { return v * n; }
inline QuadElt ring_shift(const QuadElt& v, const ZZ& n) { return v + n; }
inline QuadInt ring_scale(const QuadInt& v, const ZZ& n) { return n * v; }
inline QuadInt ring_shift(const QuadInt& v, const ZZ& n) { return v + n; }
template <class C>
Poly<C> ring_scale(const Poly<C>& v, const ZZ& n) { return v.scaled(C(n)); }
template <class C>
Poly<C> ring_shift(const Poly<C>& v, const ZZ& n) { return v + Poly<C>(C(n)); }

// ---- surface ----

struct RawProvenance {};
struct TorusProvenance {
    ZZ k;
};
struct SphereProvenance {
    ZZ k1, k2, k3, k4;
};
using Provenance = std::variant<RawProvenance, TorusProvenance, SphereProvenance>;

enum class Axis { X = 0, Y = 1, Z = 2 };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}
inline Axis axis_from_name(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    throw precondition_error("bad axis: " + s);
}

template <class R>
struct Point {
    R x, y, z;

    const R& operator[](Axis a) const {
        switch (a) {
            case Axis::X: return x;
            case Axis::Y: return y;
            default: return z;
        }
    }
    R& operator[](Axis a) {
        switch (a) {
            case Axis::X: return x;
            case Axis::Y: return y;
            default: return z;
        }
    }

    friend bool operator==(const Point& p, const Point& q) {
        return p.x == q.x && p.y == q.y && p.z == q.z;
    }
    friend bool operator!=(const Point& p, const Point& q) { return !(p == q); }
};

using PointZ = Point<ZZ>;

struct MarkoffSurface {
    int eps = 1;  // +1 or -1, sign of the xyz term
    ZZ a, b, c, d;
    Provenance provenance = RawProvenance{};

    bool is_torus() const { return std::holds_alternative<TorusProvenance>(provenance); }
    bool is_sphere() const { return std::holds_alternative<SphereProvenance>(provenance); }

    ZZ torus_k() const {
        if (!is_torus()) throw precondition_error("surface has no torus provenance");
        return std::get<TorusProvenance>(provenance).k;
    }

    const ZZ& linear_coeff(Axis ax) const {
        switch (ax) {
            case Axis::X: return a;
            case Axis::Y: return b;
            default: return c;
        }
    }

    // x^2+y^2+z^2+eps*xyz-ax-by-cz-d as a symbolic polynomial.
    TriPoly poly() const {
        TriPoly X = TriPoly::x(), Y = TriPoly::y(), Z = TriPoly::z();
        TriPoly p = X * X + Y * Y + Z * Z;
        TriPoly xyz = X * Y * Z;
        p += (eps > 0) ? xyz : -xyz;
        p -= TriPoly(a) * X;
        p -= TriPoly(b) * Y;
        p -= TriPoly(c) * Z;
        p -= TriPoly(d);
        return p;
    }

    friend bool operator==(const MarkoffSurface& s, const MarkoffSurface& t) {
        return s.eps == t.eps && s.a == t.a && s.b == t.b && s.c == t.c && s.d == t.d;
    }
};

// Normalized torus surface: eps=+1, a=b=c=0, d=k+2; x -> -x identifies it with
// the trace form x^2+y^2+z^2-xyz-2 = k.
inline MarkoffSurface from_torus(const ZZ& k) {
    return MarkoffSurface{+1, 0, 0, 0, k + 2, TorusProvenance{k}};
}

inline MarkoffSurface from_sphere(const ZZ& k1, const ZZ& k2, const ZZ& k3, const ZZ& k4) {
    ZZ A = k1 * k2 + k3 * k4;
    ZZ B = k2 * k3 + k1 * k4;
    ZZ C = k1 * k3 + k2 * k4;
    ZZ D = 4 - k1 * k1 - k2 * k2 - k3 * k3 - k4 * k4 - k1 * k2 * k3 * k4;
    return MarkoffSurface{+1, A, B, C, D, SphereProvenance{k1, k2, k3, k4}};
}

inline MarkoffSurface from_raw(int eps, const ZZ& a, const ZZ& b, const ZZ& c, const ZZ& d) {
    if (eps != 1 && eps != -1) throw precondition_error("eps must be +1 or -1");
    return MarkoffSurface{eps, a, b, c, d, RawProvenance{}};
}

// The eps=-1 twin of a torus surface: the trace presentation. Points
// convert by negating x.
inline MarkoffSurface torus_trace_form(const MarkoffSurface& s) {
    ZZ k = s.torus_k();
    return MarkoffSurface{-1, 0, 0, 0, k + 2, TorusProvenance{k}};
}

template <class R>
Point<R> flip_x(const Point<R>& p) {
    return {R() - p.x, p.y, p.z};
}
// QuadInt has no context-free zero; negate explicitly.
inline Point<QuadInt> flip_x(const Point<QuadInt>& p) { return {-p.x, p.y, p.z}; }

template <class R>
R eval(const MarkoffSurface& s, const Point<R>& p) {
    R acc = p.x * p.x + p.y * p.y + p.z * p.z;
    R xyz = p.x * p.y * p.z;
    if (s.eps > 0) acc = acc + xyz;
    else acc = acc - xyz;
    acc = acc - ring_scale(p.x, s.a) - ring_scale(p.y, s.b) - ring_scale(p.z, s.c);
    return ring_shift(acc, -s.d);
}

template <class R>
bool on_surface(const MarkoffSurface& s, const Point<R>& p) {
    return ring_is_zero(eval(s, p));
}

// Vieta involution in one coordinate: for axis x, x' = a - eps*y*z - x
// (the other quadratic root of the surface equation in x).
template <class R>
Point<R> vieta_move(const MarkoffSurface& s, Axis ax, const Point<R>& p, bool check = true) {
    if (check && !on_surface(s, p))
        throw precondition_error("vieta_move: point is not on the surface");
    Point<R> q = p;
    Axis u, v;
    switch (ax) {
        case Axis::X: u = Axis::Y; v = Axis::Z; break;
        case Axis::Y: u = Axis::X; v = Axis::Z; break;
        default: u = Axis::X; v = Axis::Y; break;
    }
    R prod = p[u] * p[v];
    if (s.eps > 0) prod = -prod;
    q[ax] = ring_shift(prod, s.linear_coeff(ax)) - p[ax];
    return q;
}

// Signed coordinate permutation new[i] = sign[i] * old[perm[i]].
struct Sym {
    std::array<int, 3> perm{0, 1, 2};
    std::array<int, 3> sign{1, 1, 1};

    bool is_identity() const { return perm == std::array<int, 3>{0, 1, 2} && sign == std::array<int, 3>{1, 1, 1}; }

    template <class R>
    Point<R> apply(const Point<R>& p) const {
        std::array<const R*, 3> in{&p.x, &p.y, &p.z};
        auto pick = [&](int i) {
            R v = *in[perm[i]];
            return sign[i] < 0 ? -v : v;
        };
        return Point<R>{pick(0), pick(1), pick(2)};
    }

    Sym inverse() const {
        Sym r;
        for (int i = 0; i < 3; ++i) {
            r.perm[perm[i]] = i;
            r.sign[perm[i]] = sign[i];
        }
        return r;
    }

    // (a.then(b)) applies a first, then b.
    Sym then(const Sym& b) const {
        Sym r;
        for (int i = 0; i < 3; ++i) {
            r.perm[i] = perm[b.perm[i]];
            r.sign[i] = b.sign[i] * sign[b.perm[i]];
        }
        return r;
    }

    friend bool operator==(const Sym& a, const Sym& b) { return a.perm == b.perm && a.sign == b.sign; }
};

// All signed coordinate permutations (even sign flips) that preserve the
// surface equation, each verified by symbolic substitution.
std::vector<Sym> symmetries(const MarkoffSurface& s);

// Whether a particular signed permutation preserves the surface.
bool is_symmetry(const MarkoffSurface& s, const Sym& g);

// ---- move words ----

struct MoveStep {
    // Either a Vieta move along `axis`, or a symmetry.
    std::variant<Axis, Sym> step;
};

using MoveWord = std::vector<MoveStep>;

inline MoveWord inverse_word(const MoveWord& w) {
    MoveWord r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        if (auto* ax = std::get_if<Axis>(&it->step)) r.push_back({*ax});
        else r.push_back({std::get<Sym>(it->step).inverse()});
    }
    return r;
}

template <class R>
Point<R> apply_word(const MarkoffSurface& s, const MoveWord& w, Point<R> p, bool check = true) {
    for (const auto& st : w) {
        if (auto* ax = std::get_if<Axis>(&st.step)) p = vieta_move(s, *ax, p, check);
        else p = std::get<Sym>(st.step).apply(p);
    }
    return p;
}

// ---- descent ----

inline ZZ max_norm(const PointZ& p) {
    return std::max(abs_z(p.x), std::max(abs_z(p.y), abs_z(p.z)));
}
inline ZZ abs_sum(const PointZ& p) { return abs_z(p.x) + abs_z(p.y) + abs_z(p.z); }

inline bool lex_less(const PointZ& p, const PointZ& q) {
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return p.z < q.z;
}

struct DescentResult {
    PointZ point;
    MoveWord word;
};

// Greedy max-norm descent: repeatedly apply the Vieta move that strictly
// decreases max(|x|,|y|,|z|), ties broken by |x|+|y|+|z| then by axis x<y<z.
DescentResult descend(const MarkoffSurface& s, const PointZ& p, long iteration_cap = 100000);

// True iff no Vieta move strictly decreases the max-norm.
bool is_descend_minimal(const MarkoffSurface& s, const PointZ& p);

// Deterministic representative of the symmetry class of p: minimal number of
// negative coordinates, then lexicographically smallest. Returns the
// representative and a symmetry mapping p to it.
std::pair<PointZ, Sym> canonical_rep(const std::vector<Sym>& syms, const PointZ& p);

} // namespace markoff
