#pragma once

/// Exact arithmetic substrate: arbitrary-precision integers and rationals
/// plus the small number-theoretic helpers the rest of the library leans on
/// (gcd, integer square roots, trial-division factoring, squarefree split,
/// canonical decimal-string serialization).

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "markoff/errors.hpp"

namespace markoff {

using ZZ = boost::multiprecision::cpp_int;
using QQ = boost::multiprecision::cpp_rational;

inline ZZ zz_of(const QQ& q) {
    if (denominator(q) != 1) throw precondition_error("rational is not an integer: " + q.str());
    return numerator(q);
}

inline bool is_integer(const QQ& q) { return denominator(q) == 1; }

inline ZZ abs_z(const ZZ& a) { return a < 0 ? ZZ(-a) : a; }
inline QQ abs_q(const QQ& a) { return a < 0 ? QQ(-a) : a; }

// num/den with sign normalization (cpp_rational requires a positive denominator)
inline QQ make_qq(const ZZ& num, const ZZ& den) {
    if (den == 0) throw precondition_error("zero denominator");
    if (den < 0) return QQ(ZZ(-num), ZZ(-den));
    return QQ(num, den);
}

// Floor of sqrt for nonnegative n.
inline ZZ isqrt_floor(const ZZ& n) {
    if (n < 0) throw precondition_error("isqrt of negative integer");
    return sqrt(n);
}

inline bool perfect_square(const ZZ& n, ZZ& root) {
    if (n < 0) return false;
    root = isqrt_floor(n);
    return root * root == n;
}

// Square root of a nonnegative rational, if exact.
inline std::optional<QQ> exact_sqrt(const QQ& q) {
    if (q < 0) return std::nullopt;
    ZZ rn, rd;
    if (!perfect_square(numerator(q), rn)) return std::nullopt;
    if (!perfect_square(denominator(q), rd)) return std::nullopt;
    return QQ(rn, rd);
}

inline bool is_prime(const ZZ& p) {
    if (p < 2) return false;
    if (p < 4) return true;
    if (p % 2 == 0) return false;
    return boost::multiprecision::miller_rabin_test(p, 32);
}

// Trial-division factorization of |n| up to `bound`; throws bound_error if a
// cofactor > bound^2 survives that is not certified prime. Exponent map over
// primes. n must be nonzero.
inline std::map<ZZ, long> factorize(ZZ n, const ZZ& bound = ZZ(1000000)) {
    if (n == 0) throw precondition_error("factorize(0)");
    std::map<ZZ, long> out;
    n = abs_z(n);
    for (ZZ p = 2; p * p <= n && p <= bound; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    if (n > 1) {
        if (n <= bound * bound || is_prime(n)) {
            ++out[n];
        } else {
            throw bound_error("factor bound exceeded for cofactor " + n.str());
        }
    }
    return out;
}

// n = square * squarefree; returns {squarefree, square_root_part}.
inline std::pair<ZZ, ZZ> squarefree_split(const ZZ& n, const ZZ& bound = ZZ(1000000)) {
    if (n == 0) return {ZZ(0), ZZ(1)};
    ZZ sf = n < 0 ? ZZ(-1) : ZZ(1);
    ZZ sq = 1;
    for (auto& [p, e] : factorize(n, bound)) {
        if (e % 2) sf *= p;
        for (long i = 0; i < e / 2; ++i) sq *= p;
    }
    return {sf, sq};
}

// v_p(r) for nonzero rational r and prime p.
inline long padic_valuation(const QQ& r, const ZZ& p) {
    if (r == 0) throw precondition_error("valuation of zero");
    if (!is_prime(p)) throw precondition_error("p-adic place requires a prime, got " + p.str());
    long v = 0;
    ZZ n = abs_z(numerator(r));
    while (n % p == 0) { n /= p; ++v; }
    ZZ d = denominator(r);
    while (d % p == 0) { d /= p; --v; }
    return v;
}

// ---- canonical decimal-string serialization ----

inline std::string to_string(const ZZ& z) { return z.str(); }

inline std::string to_string(const QQ& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline ZZ parse_zz(const std::string& s) {
    if (s.empty()) throw precondition_error("empty integer literal");
    try {
        return ZZ(s);
    } catch (const std::exception&) {
        throw precondition_error("bad integer literal: " + s);
    }
}

inline QQ parse_qq(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return QQ(parse_zz(s));
    ZZ num = parse_zz(s.substr(0, slash));
    ZZ den = parse_zz(s.substr(slash + 1));
    if (den == 0) throw precondition_error("zero denominator: " + s);
    return make_qq(num, den);
}

} // namespace markoff
