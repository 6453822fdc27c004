#pragma once

/// Machine-word kernels for exhaustive box searches (surface points and fiber
/// conic points), plus the deterministic parallel-partition helper. The rest
/// of the library stays in arbitrary precision; these scans are the only hot
/// loops and operate in int64/int128 with checked input ranges.

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

#include "markoff/surface.hpp"

namespace markoff {

using i64 = std::int64_t;
using i128 = __int128;

inline i128 isqrt_i128(i128 v) {
    if (v < 0) return -1;
    auto guess = static_cast<i128>(sqrtl(static_cast<long double>(v)));
    while (guess > 0 && guess * guess > v) --guess;
    while ((guess + 1) * (guess + 1) <= v) ++guess;
    return guess;
}

// Run f over [lo, hi] split into `workers` contiguous chunks; results are
// concatenated in chunk order, so the output is independent of scheduling.
template <class T, class F>
std::vector<T> parallel_chunks(i64 lo, i64 hi, int workers, F f) {
    if (workers < 1) workers = 1;
    i64 span = hi - lo + 1;
    if (span <= 0) return {};
    if (workers == 1 || span < 4 * workers) return f(lo, hi);
    std::vector<std::vector<T>> parts(workers);
    std::vector<std::thread> threads;
    i64 chunk = span / workers;
    for (int w = 0; w < workers; ++w) {
        i64 s = lo + chunk * w;
        i64 e = (w == workers - 1) ? hi : s + chunk - 1;
        threads.emplace_back([&, w, s, e] { parts[w] = f(s, e); });
    }
    for (auto& t : threads) t.join();
    std::vector<T> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

struct TripleI64 {
    i64 x, y, z;
    friend bool operator<(const TripleI64& p, const TripleI64& q) {
        if (p.x != q.x) return p.x < q.x;
        if (p.y != q.y) return p.y < q.y;
        return p.z < q.z;
    }
    friend bool operator==(const TripleI64& p, const TripleI64& q) {
        return p.x == q.x && p.y == q.y && p.z == q.z;
    }
};

// All integral surface points with max(|x|,|y|,|z|) <= H, by scanning (y,z)
// and solving the quadratic in x. Sorted lexicographically.
std::vector<TripleI64> surface_box_points(const MarkoffSurface& s, i64 H, int workers = 1);

struct PairI64 {
    i64 u, v;
    friend bool operator<(const PairI64& p, const PairI64& q) {
        if (p.u != q.u) return p.u < q.u;
        return p.v < q.v;
    }
    friend bool operator==(const PairI64& p, const PairI64& q) { return p.u == q.u && p.v == q.v; }
};

// Integral points of u^2 + q*uv + v^2 + l1*u + l2*v + c0 = 0 in the box
// max(|u|,|v|) <= H. Sorted.
std::vector<PairI64> conic_box_points(i64 q, i64 l1, i64 l2, i64 c0, i64 H, int workers = 1);

inline PointZ to_pointz(const TripleI64& t) { return PointZ{ZZ(t.x), ZZ(t.y), ZZ(t.z)}; }

} // namespace markoff
