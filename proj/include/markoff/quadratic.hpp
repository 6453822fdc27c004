#pragma once

/// Quadratic field and ring elements:
///   QuadElt — r + s*sqrt(D) with rational r, s and squarefree D (D = 0 marks
///             a plain rational). Arithmetic is closed in Q(sqrt(D)).
///   QuadInt — element of O_d, the ring of integers of Q(sqrt(-d)).

#include <optional>
#include <string>

#include "markoff/numbers.hpp"

namespace markoff {

class QuadElt {
public:
    QuadElt() : d_(0), r_(0), s_(0) {}
    QuadElt(const QQ& rational) : d_(0), r_(rational), s_(0) {}  // NOLINT: implicit by design
    QuadElt(const ZZ& z) : d_(0), r_(z), s_(0) {}                // NOLINT
    QuadElt(long z) : d_(0), r_(z), s_(0) {}                     // NOLINT

    // r + s*sqrt(d_raw); the square part of d_raw is folded into s.
    QuadElt(const QQ& r, const QQ& s, const ZZ& d_raw) : d_(0), r_(r), s_(0) {
        if (s == 0 || d_raw == 0) return;
        if (d_raw == 1) { r_ += s; return; }
        auto [sf, sq] = squarefree_split(d_raw);
        if (sf == 1) { r_ += s * sq; return; }
        d_ = sf;
        s_ = s * sq;
    }

    const ZZ& D() const { return d_; }
    const QQ& r() const { return r_; }
    const QQ& s() const { return s_; }
    bool is_rational() const { return d_ == 0; }
    bool is_zero() const { return r_ == 0 && s_ == 0; }

    QQ rational_value() const {
        if (!is_rational()) throw precondition_error("QuadElt is irrational: " + str());
        return r_;
    }

    QuadElt conj() const { return raw(d_, r_, -s_); }

    QQ norm() const { return r_ * r_ - QQ(d_) * s_ * s_; }

    friend QuadElt operator-(const QuadElt& a) { return raw(a.d_, -a.r_, -a.s_); }

    friend QuadElt operator+(const QuadElt& a, const QuadElt& b) {
        ZZ d = join(a, b);
        return raw(d, a.r_ + b.r_, a.s_ + b.s_);
    }
    friend QuadElt operator-(const QuadElt& a, const QuadElt& b) {
        ZZ d = join(a, b);
        return raw(d, a.r_ - b.r_, a.s_ - b.s_);
    }
    friend QuadElt operator*(const QuadElt& a, const QuadElt& b) {
        ZZ d = join(a, b);
        return raw(d, a.r_ * b.r_ + QQ(d) * a.s_ * b.s_, a.r_ * b.s_ + a.s_ * b.r_);
    }
    friend QuadElt operator/(const QuadElt& a, const QuadElt& b) {
        if (b.is_zero()) throw precondition_error("QuadElt division by zero");
        QQ n = b.norm();
        QuadElt c = a * b.conj();
        return raw(c.d_, c.r_ / n, c.s_ / n);
    }

    QuadElt& operator+=(const QuadElt& b) { return *this = *this + b; }
    QuadElt& operator-=(const QuadElt& b) { return *this = *this - b; }
    QuadElt& operator*=(const QuadElt& b) { return *this = *this * b; }
    QuadElt& operator/=(const QuadElt& b) { return *this = *this / b; }

    QuadElt inverse() const { return QuadElt(QQ(1)) / *this; }

    friend bool operator==(const QuadElt& a, const QuadElt& b) {
        return a.d_ == b.d_ && a.r_ == b.r_ && a.s_ == b.s_;
    }
    friend bool operator!=(const QuadElt& a, const QuadElt& b) { return !(a == b); }

    std::string str() const {
        if (is_rational()) return to_string(r_);
        std::string out;
        if (r_ != 0) out += to_string(r_);
        if (s_ == 1) {
            out += out.empty() ? "" : "+";
        } else if (s_ == -1) {
            out += "-";
        } else {
            if (!out.empty() && s_ > 0) out += "+";
            out += to_string(s_) + "*";
        }
        out += "sqrt(" + to_string(d_) + ")";
        return out;
    }

private:
    static QuadElt raw(const ZZ& d, const QQ& r, const QQ& s) {
        QuadElt e;
        e.r_ = r;
        if (s != 0) { e.d_ = d; e.s_ = s; }
        return e;
    }

    static ZZ join(const QuadElt& a, const QuadElt& b) {
        if (a.d_ == 0) return b.d_;
        if (b.d_ == 0 || a.d_ == b.d_) return a.d_;
        throw precondition_error("QuadElt arithmetic across different fields: sqrt(" +
                                 a.d_.str() + ") vs sqrt(" + b.d_.str() + ")");
    }

    ZZ d_;   // squarefree, 0 for rationals, never 1
    QQ r_, s_;
};

inline QuadElt operator+(const QuadElt& a, const ZZ& b) { return a + QuadElt(b); }
inline QuadElt operator-(const QuadElt& a, const ZZ& b) { return a - QuadElt(b); }
inline QuadElt operator*(const ZZ& a, const QuadElt& b) { return QuadElt(a) * b; }
inline QuadElt operator*(const QuadElt& a, const ZZ& b) { return a * QuadElt(b); }

// sqrt of a rational as a QuadElt (exact; folds square parts).
inline QuadElt quad_sqrt(const QQ& v) {
    if (v == 0) return QuadElt(QQ(0));
    // sqrt(n/d) = sqrt(n*d)/d
    ZZ nd = numerator(v) * denominator(v);
    return QuadElt(QQ(0), QQ(1, denominator(v)), nd);
}

// lambda with lambda + 1/lambda = t, i.e. lambda = (t + sqrt(t^2-4))/2.
// When t^2-4 is a perfect rational square the root of larger absolute value
// is returned (rational); t = ±2 gives the double root ±1.
inline QuadElt solve_lambda(const QQ& t) {
    QQ disc = t * t - 4;
    if (auto root = exact_sqrt(disc)) {
        QQ lam1 = (t + *root) / 2, lam2 = (t - *root) / 2;
        return QuadElt(abs_q(lam1) >= abs_q(lam2) ? lam1 : lam2);
    }
    return QuadElt(t / 2) + quad_sqrt(disc) * QuadElt(QQ(1, 2));
}

// Membership of z in O_d (ring of integers of Q(sqrt(-d)), d > 0 squarefree):
// integer coordinates in {1, sqrt(-d)}, or matching-parity half-integers when
// d ≡ 3 (mod 4).
inline bool quad_ring_membership(const QuadElt& z, const ZZ& d) {
    if (d <= 0) throw precondition_error("not imaginary quadratic: d = " + d.str());
    auto [sf, sq] = squarefree_split(d);
    if (sf != d) throw precondition_error("d must be squarefree: " + d.str());
    (void)sq;
    if (!z.is_rational() && z.D() != -d)
        throw precondition_error("element lives in Q(sqrt(" + z.D().str() +
                                 ")), not Q(sqrt(-" + d.str() + "))");
    const QQ& r = z.r();
    const QQ& s = z.s();
    if (is_integer(r) && is_integer(s)) return true;
    if (d % 4 == 3) {
        QQ r2 = r * 2, s2 = s * 2;
        if (is_integer(r2) && is_integer(s2)) return (zz_of(r2) - zz_of(s2)) % 2 == 0;
    }
    return false;
}

// An element of O_d. Stored as (a + b*sqrt(-d)) / (half ? 2 : 1); half basis
// is used exactly when d ≡ 3 (mod 4), with a ≡ b (mod 2).
class QuadInt {
public:
    QuadInt() : d_(1), half_(false), a_(0), b_(0) {}

    QuadInt(const ZZ& d, const ZZ& a, const ZZ& b) : d_(d), half_(d % 4 == 3), a_(a), b_(b) {
        if (d <= 0) throw precondition_error("QuadInt requires d > 0");
        if (half_ && (a - b) % 2 != 0)
            throw precondition_error("half-basis coordinates must have matching parity");
    }

    static QuadInt from_int(const ZZ& d, const ZZ& n) {
        bool half = d % 4 == 3;
        return QuadInt(d, half ? ZZ(2 * n) : n, ZZ(0));
    }

    const ZZ& d() const { return d_; }
    bool half_basis() const { return half_; }
    const ZZ& a() const { return a_; }
    const ZZ& b() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    QuadElt to_elt() const {
        QQ den(half_ ? 2 : 1);
        return QuadElt(QQ(a_) / den, QQ(b_) / den, -d_);
    }

    QuadInt conj() const { return QuadInt(d_, a_, -b_); }

    friend QuadInt operator-(const QuadInt& x) { return QuadInt(x.d_, -x.a_, -x.b_); }

    friend QuadInt operator+(const QuadInt& x, const QuadInt& y) {
        check(x, y);
        return QuadInt(x.d_, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadInt operator-(const QuadInt& x, const QuadInt& y) {
        check(x, y);
        return QuadInt(x.d_, x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
        check(x, y);
        ZZ A = x.a_ * y.a_ - x.d_ * x.b_ * y.b_;
        ZZ B = x.a_ * y.b_ + x.b_ * y.a_;
        if (x.half_) {
            // product of two half-basis elements has an extra factor 1/4;
            // ring closure guarantees A, B are even here.
            return QuadInt(x.d_, A / 2, B / 2);
        }
        return QuadInt(x.d_, A, B);
    }

    friend bool operator==(const QuadInt& x, const QuadInt& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadInt& x, const QuadInt& y) { return !(x == y); }

    friend QuadInt operator*(const ZZ& n, const QuadInt& x) { return QuadInt(x.d_, n * x.a_, n * x.b_); }
    friend QuadInt operator+(const QuadInt& x, const ZZ& n) { return x + from_int(x.d_, n); }
    friend QuadInt operator-(const QuadInt& x, const ZZ& n) { return x - from_int(x.d_, n); }

    std::string str() const { return to_elt().str(); }

private:
    static void check(const QuadInt& x, const QuadInt& y) {
        if (x.d_ != y.d_)
            throw precondition_error("QuadInt arithmetic across O_" + x.d_.str() +
                                     " and O_" + y.d_.str());
    }

    ZZ d_;
    bool half_;
    ZZ a_, b_;
};

} // namespace markoff
