#include "markoff/boxscan.hpp"

#include <algorithm>
#include <cmath>

namespace markoff {

namespace {

i64 to_i64_checked(const ZZ& z, const char* what) {
    if (z < std::numeric_limits<i64>::min() || z > std::numeric_limits<i64>::max())
        throw precondition_error(std::string("coefficient too large for box kernel: ") + what);
    return static_cast<i64>(z);
}

} // namespace

std::vector<TripleI64> surface_box_points(const MarkoffSurface& s, i64 H, int workers) {
    if (H < 0) throw precondition_error("box height must be >= 0");
    if (H > 2000000) throw precondition_error("box height too large for the int128 kernel");
    const i64 a = to_i64_checked(s.a, "a"), b = to_i64_checked(s.b, "b");
    const i64 c = to_i64_checked(s.c, "c"), d = to_i64_checked(s.d, "d");
    const int eps = s.eps;

    auto scan = [&](i64 ylo, i64 yhi) {
        std::vector<TripleI64> out;
        for (i64 y = ylo; y <= yhi; ++y) {
            for (i64 z = -H; z <= H; ++z) {
                // x^2 + B*x + C = 0
                i128 B = static_cast<i128>(eps) * y * z - a;
                i128 C = static_cast<i128>(y) * y + static_cast<i128>(z) * z -
                         static_cast<i128>(b) * y - static_cast<i128>(c) * z - d;
                i128 disc = B * B - 4 * C;
                if (disc < 0) continue;
                i128 r = isqrt_i128(disc);
                if (r * r != disc) continue;
                for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
                    i128 num = -B + (sgn == 0 ? r : -r);
                    if (num % 2 != 0) continue;
                    i128 x = num / 2;
                    if (x < -H || x > H) continue;
                    out.push_back({static_cast<i64>(x), y, z});
                }
            }
        }
        return out;
    };

    auto pts = parallel_chunks<TripleI64>(-H, H, workers, scan);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

std::vector<PairI64> conic_box_points(i64 q, i64 l1, i64 l2, i64 c0, i64 H, int workers) {
    if (H < 0) throw precondition_error("box height must be >= 0");
    if (H > 200000000) throw precondition_error("box height too large for the int128 kernel");

    auto scan = [&](i64 vlo, i64 vhi) {
        std::vector<PairI64> out;
        for (i64 v = vlo; v <= vhi; ++v) {
            // u^2 + (q*v + l1)*u + (v^2 + l2*v + c0) = 0
            i128 B = static_cast<i128>(q) * v + l1;
            i128 C = static_cast<i128>(v) * v + static_cast<i128>(l2) * v + c0;
            i128 disc = B * B - 4 * C;
            if (disc < 0) continue;
            i128 r = isqrt_i128(disc);
            if (r * r != disc) continue;
            for (int sgn = 0; sgn < (r == 0 ? 1 : 2); ++sgn) {
                i128 num = -B + (sgn == 0 ? r : -r);
                if (num % 2 != 0) continue;
                i128 u = num / 2;
                if (u < -H || u > H) continue;
                out.push_back({static_cast<i64>(u), v});
            }
        }
        return out;
    };

    auto pts = parallel_chunks<PairI64>(-H, H, workers, scan);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

} // namespace markoff
