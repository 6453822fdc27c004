#pragma once

/// Discretely valued field elements. A place is either p-adic on Q, or a
/// point / the point at infinity on the function field Q(T). Valued wraps a
/// payload (rational or rational function) together with its place and
/// supports exact field arithmetic; v(x) is defined for nonzero x.

#include <limits>
#include <string>
#include <variant>

#include "markoff/poly.hpp"

namespace markoff {

struct PAdicPlace {
    ZZ p;
};
struct FuncFieldPoint {
    QQ alpha;
};
struct FuncFieldInfinity {};

using Place = std::variant<PAdicPlace, FuncFieldPoint, FuncFieldInfinity>;

inline bool same_place(const Place& a, const Place& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<PAdicPlace>(a))
        return std::get<PAdicPlace>(a).p == std::get<PAdicPlace>(b).p;
    if (std::holds_alternative<FuncFieldPoint>(a))
        return std::get<FuncFieldPoint>(a).alpha == std::get<FuncFieldPoint>(b).alpha;
    return true;
}

inline std::string place_str(const Place& pl) {
    if (auto* p = std::get_if<PAdicPlace>(&pl)) return "p=" + p->p.str();
    if (auto* f = std::get_if<FuncFieldPoint>(&pl)) return "T=" + to_string(f->alpha);
    return "T=infinity";
}

// Valuation of a nonzero rational function at a place of Q(T):
// order of vanishing at T = alpha, or deg(den) - deg(num) at infinity.
inline long place_valuation(const RatFunc& f, const Place& pl) {
    if (f.is_zero()) throw precondition_error("valuation of zero");
    if (auto* pt = std::get_if<FuncFieldPoint>(&pl)) {
        return vanishing_order(f.num(), pt->alpha) - vanishing_order(f.den(), pt->alpha);
    }
    if (std::holds_alternative<FuncFieldInfinity>(pl)) {
        return f.den().degree() - f.num().degree();
    }
    throw precondition_error("p-adic place applied to a rational function");
}

class Valued {
public:
    using Payload = std::variant<QQ, RatFunc>;

    Valued() : place_(PAdicPlace{ZZ(2)}), payload_(QQ(0)) {}
    Valued(Place place, QQ q) : place_(std::move(place)), payload_(std::move(q)) {
        if (!std::holds_alternative<PAdicPlace>(place_))
            payload_ = RatFunc(std::get<QQ>(payload_));
    }
    Valued(Place place, RatFunc f) : place_(std::move(place)), payload_(std::move(f)) {
        if (std::holds_alternative<PAdicPlace>(place_))
            throw precondition_error("rational function at a p-adic place");
    }

    const Place& place() const { return place_; }
    bool is_zero() const {
        if (auto* q = std::get_if<QQ>(&payload_)) return *q == 0;
        return std::get<RatFunc>(payload_).is_zero();
    }

    long valuation() const {
        if (is_zero()) throw precondition_error("valuation of zero");
        if (auto* q = std::get_if<QQ>(&payload_))
            return padic_valuation(*q, std::get<PAdicPlace>(place_).p);
        return place_valuation(std::get<RatFunc>(payload_), place_);
    }

    // v(x) with v(0) = +infinity, encoded as LONG_MAX.
    long valuation_or_inf() const {
        if (is_zero()) return std::numeric_limits<long>::max();
        return valuation();
    }

    friend Valued operator-(const Valued& a) {
        return a.map([](auto& x) { return std::decay_t<decltype(x)>(-x); });
    }
    friend Valued operator+(const Valued& a, const Valued& b) { return zip(a, b, [](auto& x, auto& y) { return x + y; }); }
    friend Valued operator-(const Valued& a, const Valued& b) { return zip(a, b, [](auto& x, auto& y) { return x - y; }); }
    friend Valued operator*(const Valued& a, const Valued& b) { return zip(a, b, [](auto& x, auto& y) { return x * y; }); }
    friend Valued operator/(const Valued& a, const Valued& b) { return zip(a, b, [](auto& x, auto& y) { return x / y; }); }

    friend bool operator==(const Valued& a, const Valued& b) {
        if (!same_place(a.place_, b.place_)) return false;
        return a.payload_ == b.payload_;
    }
    friend bool operator!=(const Valued& a, const Valued& b) { return !(a == b); }

    std::string str() const {
        if (auto* q = std::get_if<QQ>(&payload_)) return to_string(*q);
        return std::get<RatFunc>(payload_).str();
    }

private:
    template <class F>
    Valued map(F f) const {
        Valued out = *this;
        if (auto* q = std::get_if<QQ>(&out.payload_)) out.payload_ = f(*q);
        else out.payload_ = f(std::get<RatFunc>(out.payload_));
        return out;
    }

    template <class F>
    static Valued zip(const Valued& a, const Valued& b, F f) {
        if (!same_place(a.place_, b.place_))
            throw precondition_error("mixed places: " + place_str(a.place_) + " vs " + place_str(b.place_));
        Valued out = a;
        if (auto* qa = std::get_if<QQ>(&a.payload_)) out.payload_ = f(*qa, std::get<QQ>(b.payload_));
        else out.payload_ = f(std::get<RatFunc>(a.payload_), std::get<RatFunc>(b.payload_));
        return out;
    }

    Place place_;
    Payload payload_;
};

} // namespace markoff
