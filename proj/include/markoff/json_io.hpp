#pragma once

/// JSON serialization of the domain types: canonical decimal strings for
/// integers/rationals, {"D","r","s"} for quadratic field elements, and
/// deterministic layouts for surfaces, points, words, fibers and solution
/// sets (byte-identical output for identical inputs and config).

#include <json.hpp>

#include "markoff/curves.hpp"
#include "markoff/fibers.hpp"
#include "markoff/slopes.hpp"
#include "markoff/surface.hpp"
#include "markoff/torus_lattice.hpp"

namespace markoff {

using json = nlohmann::ordered_json;

json to_json(const ZZ& z);
json to_json(const QQ& q);
json to_json(const QuadElt& e);
json to_json(const QuadInt& e);
json to_json(const MarkoffSurface& s);
json to_json(const PointZ& p);
json to_json(const Point<QuadInt>& p);
json to_json(const Sym& g);
json to_json(const MoveWord& w);
json to_json(const Slope& sl);
json to_json(const ConicCoeffs& c);
json to_json(const FiberDescriptor& d);
json to_json(const FiberPoints& fp);
json to_json(const FamilyPoint& f);
json to_json(const OrbitGeneratorInfo& o);
json to_json(const SolutionSet& s);
json to_json(const DichotomyResult& r);

// sparse monomial list [{"cx":"p/q","dx":..,"dy":..}, ...]
json to_json(const Poly2& f);
Poly2 poly2_from_json(const json& j);

PointZ point_from_json(const json& j);
PointZ parse_point(const std::string& csv);  // "x,y,z"
QuadElt quadelt_from_json(const json& j);

} // namespace markoff
