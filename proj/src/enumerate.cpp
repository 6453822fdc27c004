#include "markoff/enumerate.hpp"

#include <algorithm>
#include <map>

namespace markoff {

std::vector<PointZ> enumerate_minimal(const MarkoffSurface& s, i64 H, int workers) {
    if (H < 1) throw precondition_error("enumerate_minimal requires H >= 1");
    auto syms = symmetries(s);
    auto box = surface_box_points(s, H, workers);
    std::vector<PointZ> reps;
    for (const auto& t : box) {
        PointZ p = to_pointz(t);
        if (!is_descend_minimal(s, p)) continue;
        reps.push_back(canonical_rep(syms, p).first);
    }
    std::sort(reps.begin(), reps.end(), lex_less);
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    return reps;
}

namespace {

struct Key {
    ZZ x, y, z;
    friend bool operator<(const Key& a, const Key& b) {
        if (a.x != b.x) return a.x < b.x;
        if (a.y != b.y) return a.y < b.y;
        return a.z < b.z;
    }
};

Key key_of(const PointZ& p) { return {p.x, p.y, p.z}; }

struct Edge {
    Key parent;
    Axis move;
    Sym canon;  // applied after the move to reach this class representative
    bool root = false;
};

} // namespace

std::optional<MoveWord> orbit_equal(const MarkoffSurface& s, const PointZ& p, const PointZ& q,
                                    const OrbitSearchConfig& cfg) {
    if (!on_surface(s, p) || !on_surface(s, q))
        throw precondition_error("orbit_equal: points must lie on the surface");
    if (p == q) return MoveWord{};

    auto syms = symmetries(s);
    DescentResult dp = descend(s, p);
    DescentResult dq = descend(s, q);
    auto [cp, sym_p] = canonical_rep(syms, dp.point);
    auto [cq, sym_q] = canonical_rep(syms, dq.point);

    std::map<Key, Edge> seen;
    std::map<Key, PointZ> rep_of;
    Key start = key_of(cp), target = key_of(cq);
    seen[start] = Edge{start, Axis::X, Sym{}, true};
    rep_of[start] = cp;

    bool found = (start.x == target.x && start.y == target.y && start.z == target.z);
    std::vector<Key> frontier{start};
    long nodes = 1;
    for (long level = 0; level < cfg.depth && !found && !frontier.empty(); ++level) {
        std::vector<Key> next;
        for (const auto& k : frontier) {
            const PointZ& r = rep_of[k];
            for (Axis ax : {Axis::X, Axis::Y, Axis::Z}) {
                PointZ moved = vieta_move(s, ax, r, false);
                auto [canon, g] = canonical_rep(syms, moved);
                Key ck = key_of(canon);
                if (seen.count(ck)) continue;
                if (++nodes > cfg.node_budget)
                    throw bound_error("orbit_equal: node budget exhausted at BFS level " +
                                      std::to_string(level + 1));
                seen[ck] = Edge{k, ax, g, false};
                rep_of[ck] = canon;
                next.push_back(ck);
                if (ck.x == target.x && ck.y == target.y && ck.z == target.z) {
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
        frontier = std::move(next);
    }
    if (!found) return std::nullopt;

    // Path of (move, canonicalizing symmetry) from start class to target class.
    std::vector<std::pair<Axis, Sym>> path;
    for (Key k = target; !seen[k].root; k = seen[k].parent)
        path.emplace_back(seen[k].move, seen[k].canon);
    std::reverse(path.begin(), path.end());

    MoveWord word = dp.word;  // p -> descend(p)
    if (!sym_p.is_identity()) word.push_back({sym_p});
    for (auto& [ax, g] : path) {
        word.push_back({ax});
        if (!g.is_identity()) word.push_back({g});
    }
    Sym back = sym_q.inverse();  // target class rep -> descend(q)
    if (!back.is_identity()) word.push_back({back});
    MoveWord wq_inv = inverse_word(dq.word);  // descend(q) -> q
    word.insert(word.end(), wq_inv.begin(), wq_inv.end());

    if (apply_word(s, word, p) != q)
        throw std::logic_error("orbit_equal: reconstructed word does not replay to the target");
    return word;
}

} // namespace markoff
