#include "markoff/surface.hpp"

namespace markoff {

bool is_symmetry(const MarkoffSurface& s, const Sym& g) {
    // eval(s, g(p)) == eval(s, p) as polynomials: substitute new[i] =
    // sign[i]*old[perm[i]] into the surface polynomial and compare.
    TriPoly p = s.poly();
    return p.remap(g.perm, g.sign) == p;
}

std::vector<Sym> symmetries(const MarkoffSurface& s) {
    static const std::array<std::array<int, 3>, 6> perms{{{0, 1, 2},
                                                          {0, 2, 1},
                                                          {1, 0, 2},
                                                          {1, 2, 0},
                                                          {2, 0, 1},
                                                          {2, 1, 0}}};
    // even sign patterns keep the xyz term
    static const std::array<std::array<int, 3>, 4> signs{{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
    std::vector<Sym> out;
    for (auto& pm : perms)
        for (auto& sg : signs) {
            Sym g{pm, sg};
            if (is_symmetry(s, g)) out.push_back(g);
        }
    return out;
}

namespace {

struct MoveOption {
    Axis ax;
    PointZ target;
    ZZ norm, sum;
};

std::optional<MoveOption> best_decreasing_move(const MarkoffSurface& s, const PointZ& p, const ZZ& n0) {
    std::optional<MoveOption> best;
    for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
        PointZ q = vieta_move(s, ax, p, false);
        ZZ n = max_norm(q);
        if (n >= n0) continue;
        MoveOption opt{ax, q, n, abs_sum(q)};
        if (!best || opt.norm < best->norm ||
            (opt.norm == best->norm && opt.sum < best->sum)) {
            best = opt;  // axis order x<y<z is the final tie-break: first wins
        }
    }
    return best;
}

} // namespace

bool is_descend_minimal(const MarkoffSurface& s, const PointZ& p) {
    return !best_decreasing_move(s, p, max_norm(p)).has_value();
}

DescentResult descend(const MarkoffSurface& s, const PointZ& start, long iteration_cap) {
    if (!on_surface(s, start)) throw precondition_error("descend: point is not on the surface");
    DescentResult res{start, {}};
    ZZ n = max_norm(res.point);
    for (long iter = 0; iter < iteration_cap; ++iter) {
        auto opt = best_decreasing_move(s, res.point, n);
        if (!opt) return res;
        res.point = opt->target;
        n = opt->norm;
        res.word.push_back({opt->ax});
    }
    std::string trace = "descend: iteration cap exceeded; last point (" + res.point.x.str() + "," +
                        res.point.y.str() + "," + res.point.z.str() + ") after " +
                        std::to_string(res.word.size()) + " moves";
    throw bound_error(trace);
}

std::pair<PointZ, Sym> canonical_rep(const std::vector<Sym>& syms, const PointZ& p) {
    auto neg_count = [](const PointZ& q) {
        int n = 0;
        if (q.x < 0) ++n;
        if (q.y < 0) ++n;
        if (q.z < 0) ++n;
        return n;
    };
    std::optional<PointZ> best;
    Sym best_sym;
    int best_neg = 4;
    for (const auto& g : syms) {
        PointZ q = g.apply(p);
        int neg = neg_count(q);
        if (!best || neg < best_neg || (neg == best_neg && lex_less(q, *best))) {
            best = q;
            best_sym = g;
            best_neg = neg;
        }
    }
    if (!best) throw precondition_error("canonical_rep: empty symmetry list");
    return {*best, best_sym};
}

} // namespace markoff
