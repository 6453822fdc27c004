#pragma once

/// Slopes p/q index the isotopy classes of essential simple closed curves on
/// the once-punctured torus. Traces along them satisfy the Farey mediant
/// recursion t(u+v) = t(u)t(v) - t(u-v) from the SL2 trace relation, exact in
/// any commutative ring; the base triple is (t(1/0), t(0/1), t(1/1)) =
/// (x, y, z) in the trace presentation x^2+y^2+z^2-xyz-2 = k.
///
/// Also here: Bruhat-Tits translation lengths over discretely valued fields
/// and the breadth-first systole search.

#include <optional>
#include <string>
#include <vector>

#include "markoff/matrix2.hpp"
#include "markoff/surface.hpp"
#include "markoff/trivariate.hpp"
#include "markoff/valuation.hpp"

namespace markoff {

struct Slope {
    long p = 1, q = 0;  // canonical: gcd(|p|,q)=1, q >= 0, and p=1 when q=0

    Slope() = default;
    Slope(long pp, long qq) : p(pp), q(qq) { normalize(); }

    void normalize() {
        if (p == 0 && q == 0) throw precondition_error("slope 0/0");
        if (q < 0) { p = -p; q = -q; }
        if (q == 0) { p = 1; return; }
        long g = std::gcd(std::abs(p), q);
        p /= g;
        q /= g;
    }

    bool is_infinity() const { return q == 0; }
    long order() const { return q + std::abs(p); }  // breadth-first complexity

    friend bool operator==(const Slope& a, const Slope& b) { return a.p == b.p && a.q == b.q; }
    friend bool operator!=(const Slope& a, const Slope& b) { return !(a == b); }
    friend bool operator<(const Slope& a, const Slope& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return a.p < b.p;
    }

    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

    static Slope parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Slope(std::stol(s), 1);
        return Slope(std::stol(s.substr(0, slash)), std::stol(s.substr(slash + 1)));
    }
};

// All slopes with q+|p| <= bound in breadth-first order (ties by p).
std::vector<Slope> slopes_up_to(long bound);

using i128_cmp = __int128;

// Trace along a slope from the base trace triple, via the Stern-Brocot walk.
template <class R>
R trace_of_slope(Slope sl, const R& x, const R& y, const R& z) {
    if (sl.q == 0) return x;
    if (sl.p == 0) return y;
    if (sl.p < 0) {
        R reflected = x * y - z;
        return trace_of_slope(Slope(-sl.p, sl.q), x, y, reflected);
    }
    long lp = 0, lq = 1, rp = 1, rq = 0, mp = 1, mq = 1;
    R tl = y, tr = x, tm = z;
    while (mp != sl.p || mq != sl.q) {
        if (static_cast<i128_cmp>(sl.p) * mq < static_cast<i128_cmp>(mp) * sl.q) {
            // target below the mediant: descend into (l, m)
            R tnew = tl * tm - tr;
            rp = mp; rq = mq; tr = tm;
            mp += lp; mq += lq; tm = tnew;
        } else {
            R tnew = tm * tr - tl;
            lp = mp; lq = mq; tl = tm;
            mp += rp; mq += rq; tm = tnew;
        }
    }
    return tm;
}

inline TriPoly trace_polynomial(const Slope& sl) {
    return trace_of_slope<TriPoly>(sl, TriPoly::x(), TriPoly::y(), TriPoly::z());
}

// k1^2+k2^2+k3^2-k1k2k3-4 == 0: the (0,3) reducibility criterion.
template <class R>
bool is_reducible_triple(const R& k1, const R& k2, const R& k3) {
    R v = k1 * k1 + k2 * k2 + k3 * k3 - k1 * k2 * k3;
    return ring_is_zero(ring_shift(v, ZZ(-4)));
}

// The Vieta moves act on slopes as the three Farey edge reflections.
Slope reflect_slope(Axis move_axis, const Slope& s);

// A move word w and base axis such that, for every trace triple p,
// trace(s; p) == trace(axis; apply w to p) — both sides in the trace
// presentation. Reduces s to one of 1/0, 0/1, 1/1.
std::pair<MoveWord, Axis> slope_to_axis_word(Slope s);

inline Slope axis_slope(Axis ax) {
    switch (ax) {
        case Axis::X: return Slope(1, 0);
        case Axis::Y: return Slope(0, 1);
        default: return Slope(1, 1);
    }
}

// Primitive word in the generators (0 = A, 1 = B) whose free homotopy class
// is the slope; used only by the matrix cross-check. Negative p uses B^{-1}.
std::vector<int> christoffel_word(Slope sl);

// ---- Bruhat-Tits translation length ----

// length(g) = 2*max(0, -v(tr g)) for det-1 g; zero trace counts as integral.
long translation_length(const Mat2<Valued>& g);

struct SystoleHit {
    Slope slope;
    Valued trace;
    long valuation;  // LONG_MAX means the trace is zero
};

// First slope in breadth-first order whose trace is integral at the place.
// Requires the boundary trace x^2+y^2+z^2-xyz-2 to be integral.
SystoleHit systole_search(const Valued& x, const Valued& y, const Valued& z, long slope_bound);

inline SystoleHit systole_search(const Mat2<Valued>& A, const Mat2<Valued>& B, long slope_bound) {
    Valued one(A.a.place(), QQ(1));
    if (A.det() != one || B.det() != one)
        throw precondition_error("systole_search: matrices must have determinant 1");
    return systole_search(A.trace(), B.trace(), (A * B).trace(), slope_bound);
}

// First slope whose trace composed with a polynomial family is constant.
// The family is a trace-presentation triple over Q(sqrt(D))[T].
Slope constant_trace_slope(const Point<Poly<QuadElt>>& family, long slope_bound);

} // namespace markoff
