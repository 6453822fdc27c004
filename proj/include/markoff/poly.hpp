#pragma once

/// Univariate polynomials over an exact coefficient ring, and rational
/// functions over Q in lowest terms with monic denominator.
///
/// Degree of the zero polynomial is the sentinel -1 (the valuation layer
/// never feeds zero to a place).

#include <string>
#include <vector>

#include "markoff/numbers.hpp"

namespace markoff {

template <class R>
class Poly {
public:
    Poly() = default;
    Poly(const R& c) { coeffs_.push_back(c); trim(); }  // NOLINT: implicit constant
    explicit Poly(std::vector<R> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static Poly var() { return Poly(std::vector<R>{R(), R(1)}); }
    static Poly monomial(const R& c, int k) {
        std::vector<R> v(k + 1, R());
        v[k] = c;
        return Poly(std::move(v));
    }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }

    const R& operator[](int i) const {
        static const R zero{};
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return zero;
        return coeffs_[i];
    }

    R constant_term() const { return (*this)[0]; }
    R leading() const {
        if (is_zero()) throw precondition_error("leading coefficient of zero polynomial");
        return coeffs_.back();
    }

    const std::vector<R>& coeffs() const { return coeffs_; }

    friend Poly operator-(const Poly& p) {
        std::vector<R> v;
        v.reserve(p.coeffs_.size());
        for (auto& c : p.coeffs_) v.push_back(R() - c);
        return Poly(std::move(v));
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<R> v(std::max(a.coeffs_.size(), b.coeffs_.size()), R());
        for (size_t i = 0; i < v.size(); ++i) v[i] = a[static_cast<int>(i)] + b[static_cast<int>(i)];
        return Poly(std::move(v));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<R> v(a.coeffs_.size() + b.coeffs_.size() - 1, R());
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                v[i + j] = v[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(v));
    }

    Poly& operator+=(const Poly& b) { return *this = *this + b; }
    Poly& operator-=(const Poly& b) { return *this = *this - b; }
    Poly& operator*=(const Poly& b) { return *this = *this * b; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly scaled(const R& c) const {
        std::vector<R> v;
        v.reserve(coeffs_.size());
        for (auto& x : coeffs_) v.push_back(x * c);
        return Poly(std::move(v));
    }

    template <class S>
    S eval(const S& x) const {
        S acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + S(*it);
        return acc;
    }

    // Horner with an explicit coefficient injection, for evaluation in a
    // larger ring than R.
    template <class S, class Inject>
    S eval_with(const S& x, Inject inject) const {
        S acc{};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + inject(*it);
        return acc;
    }

    std::string str(const std::string& varname = "T") const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            if ((*this)[i] == R()) continue;
            if (!out.empty()) out += " + ";
            out += (i >= 1) ? "(" + coeff_str((*this)[i]) + ")" : coeff_str((*this)[i]);
            if (i >= 1) out += "*" + varname;
            if (i >= 2) out += "^" + std::to_string(i);
        }
        return out;
    }

private:
    static std::string coeff_str(const R& c) {
        if constexpr (requires { c.str(); }) return c.str();
        else return to_string(c);
    }

    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == R()) coeffs_.pop_back();
    }

    std::vector<R> coeffs_;
};

// Division with remainder over a coefficient field.
template <class R>
std::pair<Poly<R>, Poly<R>> divmod(const Poly<R>& a, const Poly<R>& b) {
    if (b.is_zero()) throw precondition_error("polynomial division by zero");
    Poly<R> q, r = a;
    R lead = b.leading();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        R c = r.leading() / lead;
        Poly<R> m = Poly<R>::monomial(c, k);
        q += m;
        r -= m * b;
    }
    return {q, r};
}

template <class R>
Poly<R> poly_gcd(Poly<R> a, Poly<R> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        (void)q;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.scaled(R(1) / a.leading());  // monic
}

// Order of vanishing at T = alpha (input must be nonzero).
template <class R>
long vanishing_order(Poly<R> f, const R& alpha) {
    if (f.is_zero()) throw precondition_error("vanishing order of zero polynomial");
    Poly<R> lin(std::vector<R>{R() - alpha, R(1)});
    long ord = 0;
    while (true) {
        auto [q, r] = divmod(f, lin);
        if (!r.is_zero()) break;
        ++ord;
        f = q;
    }
    return ord;
}

// Rational function num/den over Q, lowest terms, monic denominator.
class RatFunc {
public:
    RatFunc() : num_(), den_(QQ(1)) {}
    RatFunc(const QQ& c) : num_(c), den_(QQ(1)) {}  // NOLINT
    RatFunc(Poly<QQ> num, Poly<QQ> den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }
    explicit RatFunc(Poly<QQ> num) : num_(std::move(num)), den_(QQ(1)) {}

    static RatFunc var() { return RatFunc(Poly<QQ>::var()); }

    const Poly<QQ>& num() const { return num_; }
    const Poly<QQ>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RatFunc operator-(const RatFunc& f) { return RatFunc(-f.num_, f.den_); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw precondition_error("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    std::string str() const {
        if (den_ == Poly<QQ>(QQ(1))) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        if (den_.is_zero()) throw precondition_error("rational function with zero denominator");
        if (num_.is_zero()) { den_ = Poly<QQ>(QQ(1)); return; }
        Poly<QQ> g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = divmod(num_, g).first;
            den_ = divmod(den_, g).first;
        }
        QQ lead = den_.leading();
        num_ = num_.scaled(QQ(1) / lead);
        den_ = den_.scaled(QQ(1) / lead);
    }

    Poly<QQ> num_, den_;
};

} // namespace markoff
