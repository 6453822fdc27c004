#pragma once

/// Lattice points of the form (x^m, y^n) on plane curves in the
/// two-dimensional torus: multiplicative dependence detection through
/// exponent vectors, recognition of subtorus-translate binomial curves, exact
/// bounded enumeration, and the resulting finite-vs-progression dichotomy.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "markoff/numbers.hpp"
#include "markoff/poly.hpp"

namespace markoff {

// Sparse bivariate polynomial over Q.
class Poly2 {
public:
    using Key = std::pair<int, int>;  // (deg_X, deg_Y)

    Poly2() = default;
    explicit Poly2(const QQ& c) {
        if (c != 0) terms_[{0, 0}] = c;
    }
    static Poly2 monomial(const QQ& c, int dx, int dy) {
        Poly2 p;
        if (c != 0) p.terms_[{dx, dy}] = c;
        return p;
    }
    static Poly2 X() { return monomial(QQ(1), 1, 0); }
    static Poly2 Y() { return monomial(QQ(1), 0, 1); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, QQ>& terms() const { return terms_; }
    size_t monomials() const { return terms_.size(); }

    int degree_x() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.first);
        return d;
    }
    int degree_y() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.second);
        return d;
    }
    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
        return d;
    }
    int min_deg_x() const {
        int d = std::numeric_limits<int>::max();
        for (auto& [e, c] : terms_) d = std::min(d, e.first);
        return terms_.empty() ? 0 : d;
    }
    int min_deg_y() const {
        int d = std::numeric_limits<int>::max();
        for (auto& [e, c] : terms_) d = std::min(d, e.second);
        return terms_.empty() ? 0 : d;
    }

    friend Poly2 operator-(const Poly2& p) {
        Poly2 q;
        for (auto& [e, c] : p.terms_) q.terms_[e] = -c;
        return q;
    }
    friend Poly2 operator+(const Poly2& a, const Poly2& b) {
        Poly2 out = a;
        for (auto& [e, c] : b.terms_) out.add(e, c);
        return out;
    }
    friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (-b); }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 out;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                out.add({ea.first + eb.first, ea.second + eb.second}, ca * cb);
        return out;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly2& a, const Poly2& b) { return !(a == b); }

    QQ eval(const QQ& x, const QQ& y) const;

    // f(x*X, y*Y)
    Poly2 scale_args(const QQ& x, const QQ& y) const;

    // coefficients as univariate polynomials in X (entries indexed by deg_X)
    std::vector<Poly<QQ>> coeffs_in_x() const;

    std::string str() const;

    // parse "2*X^2 - Y^3 + 1" style input (also lowercase x/y)
    static Poly2 parse(const std::string& text);

private:
    void add(const Key& e, const QQ& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Key, QQ> terms_;
};

struct LatticePointProblem {
    Poly2 f;
    QQ x, y;

    LatticePointProblem(Poly2 f_, QQ x_, QQ y_);
};

struct MultDependence {
    QQ v;      // v > 1
    long a, b; // coprime positive: (|x|, |y|) = (v^a, v^b)
};

// Requires |x|, |y| > 1 (callers reduce by inversion).
std::optional<MultDependence> multiplicative_dependence(const QQ& x, const QQ& y);

struct SubtorusData {
    long d = 0, e = 0;  // coprime; zero locus is {(u0*T^e, v0*T^d)}
    QQ u0, v0;
};

// Two-monomial f with primitive opposite-sign exponent difference; performs
// the desk irreducibility gate first and errors loudly on reducible input.
std::optional<SubtorusData> is_subtorus_translate(const Poly2& f);

// S ∩ [0,M]^2 for S = {(m,n): f(x^m, y^n) = 0}, exact, sorted.
std::vector<std::pair<long, long>> exponential_solutions(const LatticePointProblem& prob, long M);

struct DichotomyResult {
    bool subtorus = false;
    // subtorus data
    SubtorusData torus;
    QQ invariant_x, invariant_y;  // (x^{be}, y^{ad})
    long step_m = 0, step_n = 0;  // (be, ad)
    // enumeration (always filled)
    std::vector<std::pair<long, long>> solutions;
    long bound = 0;
};

DichotomyResult classify_dichotomy(const LatticePointProblem& prob, long M);

} // namespace markoff
