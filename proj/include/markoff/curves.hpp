#pragma once

/// Curves on a Markoff-type surface: integrable/nonintegrable classification
/// against the trace functions, bounded-trace witnesses at infinity, and the
/// integral-point solver dispatching between fiber dynamics (integrable) and
/// certified/box searches (nonintegrable). Corollary-5 style constraint
/// solving sits on top.
///
/// Coordinates: curves are stored in the canonical (+xyz) coordinates of
/// their surface; trace-flavored computations convert through the torus
/// involution x -> -x internally.

#include <optional>
#include <string>
#include <variant>

#include "markoff/enumerate.hpp"
#include "markoff/fibers.hpp"
#include "markoff/slopes.hpp"

namespace markoff {

using FamilyPoint = Point<Poly<QuadElt>>;

struct ParamShape {
    FamilyPoint coords;  // canonical coordinates, polynomial in one parameter
};
struct ImplicitShape {
    TriPoly g;  // canonical coordinates
};

struct CurveOnSurface {
    MarkoffSurface surface;
    std::variant<ParamShape, ImplicitShape> shape;

    static CurveOnSurface parametrized(const MarkoffSurface& s, const FamilyPoint& coords);
    static CurveOnSurface implicit(const MarkoffSurface& s, const TriPoly& g);

    bool is_parametrized() const { return std::holds_alternative<ParamShape>(shape); }
};

struct CurveClassification {
    bool integrable = false;
    // integrable: the constant trace function and its value
    std::optional<Slope> slope;    // trace-presentation slope (torus); axis slope on the sphere
    QuadElt value;                 // the constant trace value
    bool full_fiber = false;       // implicit curve is exactly a coordinate fiber
    // nonintegrable: two sampled points witnessing nonconstancy per candidate
    std::vector<PointZ> witnesses;
};

// Torus: scan slope traces up to slope_bound; Sphere: the three coordinates
// are the candidate trace functions (slope_bound ignored). Implicit curves
// are sampled on an integral box; a sampled-constant candidate that cannot be
// certified raises precondition_error("undetermined ..."), never a guess.
CurveClassification classify_curve(const CurveOnSurface& c, long slope_bound,
                                   i64 sample_box = 60);

struct InfinityWitness {
    Place place;
    Slope slope;
    QuadElt value;  // limiting trace value at the place
};

// For each place at infinity of a parametrized curve (polynomial shape: the
// single place T -> infinity), the first slope whose trace is bounded there.
std::vector<InfinityWitness> infinity_witnesses(const CurveOnSurface& c, long slope_bound);

struct OrbitGeneratorInfo {
    PointZ rep;  // canonical coordinates
    Axis axis = Axis::X;
    QQ t;        // trace value of the fiber
    long period = 0;
    long size_in_box = 0;
};

struct SolutionSet {
    std::vector<PointZ> finite_points;              // canonical coordinates
    std::vector<FamilyPoint> families;              // infinite polynomial families
    std::vector<OrbitGeneratorInfo> orbit_generators;
    std::vector<Point<QuadInt>> od_points;          // when solving over O_d
    bool certified = false;
    i64 search_bound = 0;
    std::string note;
};

struct RingSpec {
    bool imaginary_quadratic = false;
    ZZ d = 1;  // only read when imaginary_quadratic

    static RingSpec integers() { return {}; }
    static RingSpec od(const ZZ& d) { return {true, d}; }
};

struct SolveConfig {
    i64 H = 100;
    long slope_bound = 50;
    int workers = 1;
    i64 od_box = 3;
};

SolutionSet solve_curve_integral(const CurveOnSurface& c, const RingSpec& ring,
                                 const SolveConfig& cfg);

// Corollary-5 entry point: integer polynomial constraints in canonical
// coordinates cut a locus on the surface; empty constraints delegate to
// minimal-point enumeration.
SolutionSet corollary5_solve(const MarkoffSurface& s, const std::vector<TriPoly>& constraints,
                             const SolveConfig& cfg);

} // namespace markoff
