#pragma once

/// Minimal-point enumeration and orbit connectivity on a surface: the engine
/// behind the "every Diophantine equation can be solved" entry point. All
/// results are deterministic and independent of the worker count.

#include <optional>

#include "markoff/boxscan.hpp"
#include "markoff/surface.hpp"

namespace markoff {

// All descend-minimal integral points with max-norm <= H, one representative
// per symmetry class (fewest negative coordinates, then lex), sorted lex.
std::vector<PointZ> enumerate_minimal(const MarkoffSurface& s, i64 H, int workers = 1);

struct OrbitSearchConfig {
    long depth = 40;
    long node_budget = 200000;
};

// BFS over Vieta moves on symmetry classes from descend(p) to descend(q).
// Returns a move word whose replay from p lands exactly on q, or nullopt if
// the classes are not connected within `depth` BFS levels. Exhausting the
// node budget raises bound_error.
std::optional<MoveWord> orbit_equal(const MarkoffSurface& s, const PointZ& p, const PointZ& q,
                                    const OrbitSearchConfig& cfg = {});

} // namespace markoff
