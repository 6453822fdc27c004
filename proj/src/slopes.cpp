#include "markoff/slopes.hpp"

#include <algorithm>
#include <limits>

namespace markoff {

std::vector<Slope> slopes_up_to(long bound) {
    std::vector<Slope> out;
    for (long o = 1; o <= bound; ++o) {
        for (long p = -o; p <= o; ++p) {
            long q = o - std::abs(p);
            if (q < 0) continue;
            if (q == 0 && p != 1) continue;
            if (p == 0 && q != 1) continue;
            if (q > 0 && std::gcd(std::abs(p), q) != 1) continue;
            out.push_back(Slope(p, q));
        }
    }
    return out;
}

Slope reflect_slope(Axis move_axis, const Slope& s) {
    switch (move_axis) {
        case Axis::X: return Slope(s.p, 2 * s.p - s.q);   // reflection across (0/1, 1/1)
        case Axis::Y: return Slope(2 * s.q - s.p, s.q);   // reflection across (1/0, 1/1)
        default: return Slope(-s.p, s.q);                 // reflection across (1/0, 0/1)
    }
}

std::pair<MoveWord, Axis> slope_to_axis_word(Slope s) {
    MoveWord word;
    for (int guard = 0; guard < 4096; ++guard) {
        if (s == Slope(1, 0)) return {word, Axis::X};
        if (s == Slope(0, 1)) return {word, Axis::Y};
        if (s == Slope(1, 1)) return {word, Axis::Z};
        Axis ax;
        if (s.p < 0) ax = Axis::Z;
        else if (s.p > s.q) ax = Axis::Y;
        else ax = Axis::X;
        s = reflect_slope(ax, s);
        word.push_back({ax});
    }
    throw bound_error("slope_to_axis_word: reduction did not terminate");
}

std::vector<int> christoffel_word(Slope sl) {
    if (sl.q == 0) return {0};
    if (sl.p == 0) return {1};
    bool neg = sl.p < 0;
    long p = std::abs(sl.p), q = sl.q;
    // walk as in trace_of_slope; a mediant word is a concatenation of its
    // Farey parents, which keeps every trace identity on the nose
    std::vector<int> wl{1}, wr{0}, wm{0, 1};
    long lp = 0, lq = 1, rp = 1, rq = 0, mp = 1, mq = 1;
    auto concat = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c = a;
        c.insert(c.end(), b.begin(), b.end());
        return c;
    };
    while (mp != p || mq != q) {
        if (static_cast<i128_cmp>(p) * mq < static_cast<i128_cmp>(mp) * q) {
            rp = mp; rq = mq; wr = wm;
            mp += lp; mq += lq; wm = concat(wl, wr);
        } else {
            lp = mp; lq = mq; wl = wm;
            mp += rp; mq += rq; wm = concat(wl, wr);
        }
    }
    if (neg)
        for (auto& c : wm)
            if (c == 1) c = 2;  // 2 encodes B^{-1}
    return wm;
}

long translation_length(const Mat2<Valued>& g) {
    Valued one(g.a.place(), QQ(1));
    if (g.det() != one) throw precondition_error("translation_length requires determinant 1");
    Valued tr = g.trace();
    if (tr.is_zero()) return 0;  // v(0) treated as +infinity
    long v = tr.valuation();
    return v >= 0 ? 0 : -2 * v;
}

SystoleHit systole_search(const Valued& x, const Valued& y, const Valued& z, long slope_bound) {
    Valued two(x.place(), QQ(2));
    Valued boundary = x * x + y * y + z * z - x * y * z - two;
    if (boundary.valuation_or_inf() < 0)
        throw precondition_error("systole_search: boundary trace is not integral at the place");
    long best_v = std::numeric_limits<long>::min();
    Slope best_slope(1, 0);
    for (const Slope& sl : slopes_up_to(slope_bound)) {
        Valued t = trace_of_slope<Valued>(sl, x, y, z);
        long v = t.valuation_or_inf();
        if (v >= 0) return SystoleHit{sl, t, v};
        if (v > best_v) { best_v = v; best_slope = sl; }
    }
    throw bound_error("systole_search: no integral trace among slopes with q+|p| <= " +
                      std::to_string(slope_bound) + "; best valuation " + std::to_string(best_v) +
                      " at slope " + best_slope.str());
}

namespace {

Point<QuadElt> eval_family(const Point<Poly<QuadElt>>& fam, const QuadElt& t) {
    return {fam.x.eval(t), fam.y.eval(t), fam.z.eval(t)};
}

} // namespace

Slope constant_trace_slope(const Point<Poly<QuadElt>>& family, long slope_bound) {
    // screen cheaply at three parameter values, then certify symbolically
    Point<QuadElt> s0 = eval_family(family, QuadElt(QQ(0)));
    Point<QuadElt> s1 = eval_family(family, QuadElt(QQ(1)));
    Point<QuadElt> s2 = eval_family(family, QuadElt(QQ(-1)));
    for (const Slope& sl : slopes_up_to(slope_bound)) {
        QuadElt t0 = trace_of_slope<QuadElt>(sl, s0.x, s0.y, s0.z);
        QuadElt t1 = trace_of_slope<QuadElt>(sl, s1.x, s1.y, s1.z);
        if (t0 != t1) continue;
        QuadElt t2 = trace_of_slope<QuadElt>(sl, s2.x, s2.y, s2.z);
        if (t0 != t2) continue;
        Poly<QuadElt> full = trace_of_slope<Poly<QuadElt>>(sl, family.x, family.y, family.z);
        if (full.is_constant()) return sl;
    }
    throw bound_error("constant_trace_slope: no constant trace among slopes with q+|p| <= " +
                      std::to_string(slope_bound));
}

} // namespace markoff
