#pragma once

/// Fibers of a trace coordinate on the two base-case surfaces: perfect vs
/// parabolic classification, the induced conic, the twist generator on the
/// fiber, the lambda-torus parametrization of perfect fibers, polynomial
/// families on parabolic fibers, and integral-point orbit decomposition.
///
/// Conventions: for Torus provenance all fiber data (t, points, conics,
/// families) lives in the trace presentation x^2+y^2+z^2-xyz-2 = k; callers
/// holding canonical (+xyz) points convert with flip_x. Sphere and Raw
/// surfaces already are in their natural coordinates.

#include <optional>

#include "markoff/boxscan.hpp"
#include "markoff/quadratic.hpp"
#include "markoff/slopes.hpp"
#include "markoff/surface.hpp"

namespace markoff {

enum class FiberClass { Perfect, Parabolic };
enum class ParabolicReason { None, TracePm2, ReducibleFactor };

// u^2 + uv_coeff*u*v + v^2 + lin_u*u + lin_v*v + constant = 0 in the two free
// variables (u, v), ordered by axis: x -> (y,z), y -> (x,z), z -> (x,y).
struct ConicCoeffs {
    QQ uv, lu, lv, c0;
};

struct FiberDescriptor {
    Axis axis = Axis::X;
    QQ t;
    FiberClass cls = FiberClass::Perfect;
    ParabolicReason reason = ParabolicReason::None;
    ConicCoeffs conic;
    std::optional<QuadElt> lambda;  // lambda + 1/lambda = t
};

// Working frame of a fiber: surface in working coordinates (trace form for
// torus), the free axes, and the twist generator. The generator is the half
// twist (swap of free variables followed by the Vieta move in the second)
// whenever the swap is a symmetry of the surface; otherwise the composition
// of the two free-variable moves. The half twist squares to the two-move
// composition.
struct FiberFrame {
    MarkoffSurface work;
    bool trace_coords = false;
    Axis axis = Axis::X, first = Axis::Y, second = Axis::Z;
    bool half = false;
    Sym swap_sym;
};

FiberFrame fiber_frame(const MarkoffSurface& s, Axis axis);

ConicCoeffs fiber_conic(const MarkoffSurface& s, Axis axis, const QQ& t);

// Torus: parabolic iff t = ±2 or (t != ±2, k != 2, t^2-2-k = 0).
// Sphere: parabolic iff t = ±2 or one boundary-pair factor
// k_i^2+k_j^2+t^2-t*k_i*k_j-4 vanishes (axis x pairs (1,2),(3,4); y pairs
// (2,3),(1,4); z pairs (1,3),(2,4)). Raw provenance has no moduli
// interpretation and is rejected.
FiberDescriptor classify_fiber(const MarkoffSurface& s, Axis axis, const QQ& t);

// The degenerate-factorization defect: zero exactly when the conic splits
// into two lines. Torus: k+2-t^2. Sphere: m1*m2 - (t^2-At-D) with (m1,m2)
// solving the linear system of the line factorization. Requires t != ±2.
QQ degeneracy_defect(const MarkoffSurface& s, Axis axis, const QQ& t);

template <class R>
Point<R> fiber_generator_step(const FiberFrame& fr, Point<R> p, bool inverse) {
    if (fr.half) {
        if (!inverse) {
            p = fr.swap_sym.apply(p);
            p = vieta_move(fr.work, fr.second, p, false);
        } else {
            p = vieta_move(fr.work, fr.second, p, false);
            p = fr.swap_sym.apply(p);
        }
    } else {
        if (!inverse) {
            p = vieta_move(fr.work, fr.first, p, false);
            p = vieta_move(fr.work, fr.second, p, false);
        } else {
            p = vieta_move(fr.work, fr.second, p, false);
            p = vieta_move(fr.work, fr.first, p, false);
        }
    }
    return p;
}

// Apply the fiber twist generator n times (inverse for n < 0). The point is
// given in working coordinates and must lie on the surface; the axis
// coordinate is preserved exactly.
template <class R>
Point<R> fiber_generator_apply(const MarkoffSurface& s, Axis axis, Point<R> p, long n) {
    FiberFrame fr = fiber_frame(s, axis);
    if (!on_surface(fr.work, p))
        throw precondition_error("fiber_generator_apply: point is not on the fiber surface");
    for (long i = 0; i < std::abs(n); ++i) p = fiber_generator_step(fr, p, n < 0);
    return p;
}

// lambda-torus parametrization of a perfect torus fiber with t != ±2:
// (u - lambda*v)(u - 1/lambda*v) = c with c = k+2-t^2, evaluate(w) solves
// u - lambda*v = w, u - 1/lambda*v = c/w. The twist generator conjugates to
// multiplication by lambda^exponent.
struct TorusFiberParam {
    FiberFrame frame;
    QQ t, k, c;
    QuadElt lambda;
    int exponent = 1;

    Point<QuadElt> evaluate(const QuadElt& u) const;
};

TorusFiberParam fiber_parametrization(const MarkoffSurface& s, Axis axis, const QQ& t);

// A nonconstant polynomial family (in working coordinates) lying in a
// parabolic fiber; errors on perfect fibers.
Point<Poly<QuadElt>> parametrize_parabolic_fiber(const MarkoffSurface& s, Axis axis, const QQ& t);

// All line/parabola components of a parabolic fiber as polynomial families
// (1 or 2 of them, deduplicated), working coordinates.
std::vector<Point<Poly<QuadElt>>> parabolic_fiber_components(const MarkoffSurface& s, Axis axis,
                                                             const QQ& t);

// Ungated construction attempt: builds the candidate family from the conic
// data alone and keeps it only if it verifies (on-fiber, nonconstant). This
// is the parametrization oracle; it never consults the classification.
std::optional<Point<Poly<QuadElt>>> try_parabolic_family(const MarkoffSurface& s, Axis axis,
                                                         const QQ& t);

struct FiberOrbit {
    PointZ rep;             // working coordinates
    long period = 0;        // generator period of the rep; 0 = infinite orbit
    long size_in_box = 0;   // points of the scanned box lying in this orbit
};

struct FiberPoints {
    FiberDescriptor descriptor;
    std::vector<FiberOrbit> orbits;    // grouped under generator + fiber symmetries
    std::vector<PointZ> sporadic;      // full finite list when |t| < 2
    std::vector<PointZ> all_points;    // every scanned box point, sorted
};

// Integral points on the fiber with max|coord| <= H, grouped into orbits of
// the twist generator (together with the fiber-preserving symmetries), one
// deterministic representative each.
FiberPoints fiber_integral_points(const MarkoffSurface& s, Axis axis, const QQ& t, i64 H,
                                  int workers = 1);

// All O_d points of the surface (canonical coordinates) whose QuadInt
// coordinates (a, b) satisfy max(|a|,|b|) <= H, deduplicated under the
// surface symmetries and complex conjugation, deterministically ordered.
std::vector<Point<QuadInt>> points_over_Od(const MarkoffSurface& s, const ZZ& d, i64 H);

} // namespace markoff
