#pragma once

/// Integer-coefficient polynomials in the coordinates (x, y, z): the surface
/// equation, symmetry verification, slope trace polynomials and user-supplied
/// curve constraints all live here. Monomials are kept in a sorted map, so
/// printing and equality are canonical.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "markoff/numbers.hpp"

namespace markoff {

class TriPoly {
public:
    using Expo = std::array<int, 3>;

    TriPoly() = default;
    explicit TriPoly(const ZZ& c) {
        if (c != 0) terms_[{0, 0, 0}] = c;
    }

    static TriPoly variable(int i) {
        TriPoly p;
        Expo e{0, 0, 0};
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }
    static TriPoly x() { return variable(0); }
    static TriPoly y() { return variable(1); }
    static TriPoly z() { return variable(2); }

    static TriPoly monomial(const ZZ& c, int dx, int dy, int dz) {
        TriPoly p;
        if (c != 0) p.terms_[{dx, dy, dz}] = c;
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Expo{0, 0, 0});
    }
    ZZ constant_value() const {
        if (is_zero()) return 0;
        if (!is_constant()) throw precondition_error("polynomial is not constant: " + str());
        return terms_.begin()->second;
    }
    const std::map<Expo, ZZ>& terms() const { return terms_; }

    int total_degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
        return d;
    }

    // Degree in a single variable.
    int degree_in(int i) const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e[i]);
        return d;
    }

    friend TriPoly operator-(const TriPoly& p) {
        TriPoly out;
        for (auto& [e, c] : p.terms_) out.terms_[e] = -c;
        return out;
    }
    friend TriPoly operator+(const TriPoly& a, const TriPoly& b) {
        TriPoly out = a;
        for (auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }
    friend TriPoly operator-(const TriPoly& a, const TriPoly& b) { return a + (-b); }
    friend TriPoly operator*(const TriPoly& a, const TriPoly& b) {
        TriPoly out;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_)
                out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        return out;
    }
    TriPoly& operator+=(const TriPoly& b) { return *this = *this + b; }
    TriPoly& operator-=(const TriPoly& b) { return *this = *this - b; }
    TriPoly& operator*=(const TriPoly& b) { return *this = *this * b; }

    friend bool operator==(const TriPoly& a, const TriPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TriPoly& a, const TriPoly& b) { return !(a == b); }

    // Substitute new[i] = sign[i] * old[perm[i]], i.e. precompose with a
    // signed coordinate permutation. Exponents are remapped, no expansion.
    TriPoly remap(const std::array<int, 3>& perm, const std::array<int, 3>& sign) const {
        TriPoly out;
        for (auto& [e, c] : terms_) {
            Expo ne{0, 0, 0};
            ZZ nc = c;
            for (int i = 0; i < 3; ++i) {
                ne[perm[i]] += e[i];
                if (sign[i] < 0 && (e[i] % 2)) nc = -nc;
            }
            out.add_term(ne, nc);
        }
        return out;
    }

    // Evaluate at elements of any commutative ring S; `inject` maps ZZ -> S.
    template <class S, class Inject>
    S eval(const S& vx, const S& vy, const S& vz, Inject inject) const {
        std::vector<S> px = powers(vx, degree_in(0), inject);
        std::vector<S> py = powers(vy, degree_in(1), inject);
        std::vector<S> pz = powers(vz, degree_in(2), inject);
        S acc = inject(ZZ(0));
        for (auto& [e, c] : terms_) acc = acc + inject(c) * px[e[0]] * py[e[1]] * pz[e[2]];
        return acc;
    }

    ZZ eval_zz(const ZZ& vx, const ZZ& vy, const ZZ& vz) const {
        return eval<ZZ>(vx, vy, vz, [](const ZZ& c) { return c; });
    }
    QQ eval_qq(const QQ& vx, const QQ& vy, const QQ& vz) const {
        return eval<QQ>(vx, vy, vz, [](const ZZ& c) { return QQ(c); });
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        static const char* names[3] = {"x", "y", "z"};
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const ZZ& c = it->second;
            std::string mono;
            for (int i = 0; i < 3; ++i) {
                if (it->first[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[i];
                if (it->first[i] > 1) mono += "^" + std::to_string(it->first[i]);
            }
            std::string coef;
            if (mono.empty()) coef = c.str();
            else if (c == 1) coef = "";
            else if (c == -1) coef = "-";
            else coef = c.str() + "*";
            std::string term = coef + mono;
            if (out.empty()) out = term;
            else if (!term.empty() && term[0] == '-') out += " - " + term.substr(1);
            else out += " + " + term;
        }
        return out;
    }

private:
    template <class S, class Inject>
    static std::vector<S> powers(const S& v, int maxdeg, Inject inject) {
        std::vector<S> p;
        p.push_back(inject(ZZ(1)));
        for (int i = 1; i <= std::max(0, maxdeg); ++i) p.push_back(p.back() * v);
        return p;
    }

    void add_term(const Expo& e, const ZZ& c) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            if (c != 0) terms_[e] = c;
            return;
        }
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }

    std::map<Expo, ZZ> terms_;
};

// Parse an integer polynomial in x, y, z.  Accepts +, -, *, ^, parentheses-free
// monomial syntax ("x^2*y - 3*z + 7", "2x", "xy"), and an optional single '='
// which is folded as lhs - rhs ("x=-3" becomes x+3).
TriPoly parse_tripoly(const std::string& text);

} // namespace markoff
