#pragma once

/// 2x2 matrices over an exact ring.

#include <string>

namespace markoff {

template <class R>
struct Mat2 {
    R a, b, c, d;

    static Mat2 identity(const R& one) { return {one, one - one, one - one, one}; }

    R det() const { return a * d - b * c; }
    R trace() const { return a + d; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }

    // Inverse of a determinant-one matrix.
    Mat2 inv_det1() const { return {d, -b, -c, a}; }

    friend bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
};

} // namespace markoff
