#include "markoff/torus_lattice.hpp"

#include <algorithm>
#include <cctype>

namespace markoff {

QQ Poly2::eval(const QQ& x, const QQ& y) const {
    // cache powers (exponents are small at desk scale)
    std::map<int, QQ> px{{0, QQ(1)}}, py{{0, QQ(1)}};
    auto pw = [](std::map<int, QQ>& cache, const QQ& base, int k) {
        auto it = cache.find(k);
        if (it != cache.end()) return it->second;
        QQ v = cache.rbegin()->second;
        for (int i = cache.rbegin()->first; i < k; ++i) v *= base;
        cache[k] = v;
        return v;
    };
    QQ acc;
    for (auto& [e, c] : terms_) acc += c * pw(px, x, e.first) * pw(py, y, e.second);
    return acc;
}

Poly2 Poly2::scale_args(const QQ& x, const QQ& y) const {
    Poly2 out;
    for (auto& [e, c] : terms_) {
        QQ s = c;
        for (int i = 0; i < e.first; ++i) s *= x;
        for (int i = 0; i < e.second; ++i) s *= y;
        out.add(e, s);
    }
    return out;
}

std::vector<Poly<QQ>> Poly2::coeffs_in_x() const {
    std::vector<Poly<QQ>> out;
    int dx = degree_x();
    for (int i = 0; i <= dx; ++i) {
        std::vector<QQ> cs;
        for (auto& [e, c] : terms_)
            if (e.first == i) {
                if (static_cast<int>(cs.size()) <= e.second) cs.resize(e.second + 1, QQ(0));
                cs[e.second] = c;
            }
        out.push_back(Poly<QQ>(cs));
    }
    return out;
}

std::string Poly2::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        std::string term;
        const QQ& c = it->second;
        auto [dx, dy] = it->first;
        std::string mono;
        if (dx) mono += "X" + (dx > 1 ? "^" + std::to_string(dx) : "");
        if (dy) mono += std::string(dx ? "*" : "") + "Y" + (dy > 1 ? "^" + std::to_string(dy) : "");
        if (mono.empty()) term = to_string(c);
        else if (c == 1) term = mono;
        else if (c == -1) term = "-" + mono;
        else term = to_string(c) + "*" + mono;
        if (out.empty()) out = term;
        else if (term[0] == '-') out += " - " + term.substr(1);
        else out += " + " + term;
    }
    return out;
}

Poly2 Poly2::parse(const std::string& text) {
    // term grammar mirrors the trivariate parser with variables X and Y and
    // rational coefficients like 3/2
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto number = [&]() -> QQ {
        std::string tok;
        while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) tok += text[i++];
        return parse_qq(tok);
    };
    Poly2 acc;
    int sign = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) sign = (text[i++] == '-') ? -1 : 1;
    while (true) {
        skip();
        QQ coef(1);
        int dx = 0, dy = 0;
        bool seen = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coef = number();
            seen = true;
        }
        while (true) {
            skip();
            if (i < text.size() && text[i] == '*') { ++i; skip(); }
            if (i < text.size() && (text[i] == 'X' || text[i] == 'x' || text[i] == 'Y' || text[i] == 'y')) {
                bool isx = (text[i] == 'X' || text[i] == 'x');
                ++i;
                int e = 1;
                skip();
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    skip();
                    std::string d;
                    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) d += text[i++];
                    if (d.empty()) throw precondition_error("missing exponent in polynomial");
                    e = std::stoi(d);
                }
                (isx ? dx : dy) += e;
                seen = true;
            } else break;
        }
        if (!seen) throw precondition_error("expected a term in bivariate polynomial: " + text);
        acc = acc + monomial(QQ(sign) * coef, dx, dy);
        skip();
        if (i >= text.size()) break;
        if (text[i] == '+') { sign = 1; ++i; }
        else if (text[i] == '-') { sign = -1; ++i; }
        else throw precondition_error("unexpected character in polynomial: " + text.substr(i));
    }
    return acc;
}

LatticePointProblem::LatticePointProblem(Poly2 f_, QQ x_, QQ y_)
    : f(std::move(f_)), x(std::move(x_)), y(std::move(y_)) {
    if (f.is_zero()) throw precondition_error("lattice problem needs a nonzero polynomial");
    if (f.min_deg_x() > 0 || f.min_deg_y() > 0)
        throw precondition_error("polynomial must not be divisible by X or Y (torus units)");
    for (const QQ* v : {&x, &y}) {
        QQ a = abs_q(*v);
        if (a == 0 || a == 1)
            throw precondition_error("base values must have |value| different from 0 and 1");
    }
}

std::optional<MultDependence> multiplicative_dependence(const QQ& x, const QQ& y) {
    QQ ax = abs_q(x), ay = abs_q(y);
    if (ax <= 1 || ay <= 1)
        throw precondition_error("multiplicative_dependence requires |x|, |y| > 1");

    // exponent vectors over the union of prime supports
    auto vec = [](const QQ& q) {
        std::map<ZZ, long> e;
        for (auto& [p, k] : factorize(numerator(q))) e[p] += k;
        for (auto& [p, k] : factorize(denominator(q))) e[p] -= k;
        e.erase(ZZ(1));
        return e;
    };
    auto ex = vec(ax), ey = vec(ay);
    if (ex.empty() || ey.empty()) return std::nullopt;  // |x| or |y| is 1; cannot happen
    std::set<ZZ> support;
    for (auto& [p, k] : ex) support.insert(p);
    for (auto& [p, k] : ey) support.insert(p);
    for (auto& p : support)
        if (!ex.count(p) || !ey.count(p)) return std::nullopt;

    long g_e = 0, g_f = 0;
    for (auto& [p, k] : ex) g_e = std::gcd(g_e, std::abs(k));
    for (auto& [p, k] : ey) g_f = std::gcd(g_f, std::abs(k));
    // primitive direction w = ex / g_e; require ey = g_f * w as well
    for (auto& p : support) {
        long wx = ex[p] / g_e;
        if (ex[p] != wx * g_e) return std::nullopt;
        if (ey[p] != wx * g_f) return std::nullopt;
    }
    long g = std::gcd(g_e, g_f);
    long a = g_e / g, b = g_f / g;
    // v = prod p^{w_p * g}
    QQ v(1);
    for (auto& p : support) {
        long k = (ex[p] / g_e) * g;
        for (long i = 0; i < std::abs(k); ++i) {
            if (k > 0) v *= QQ(p);
            else v /= QQ(p);
        }
    }
    if (v <= 1) return std::nullopt;  // direction mismatch (e.g. |x|>1 but vector points down)
    return MultDependence{v, a, b};
}

namespace {

// rational roots of a univariate rational-coefficient polynomial
std::vector<QQ> rational_roots(const Poly<QQ>& p) {
    std::vector<QQ> roots;
    if (p.degree() < 1) return roots;
    // clear denominators
    ZZ den = 1;
    for (auto& c : p.coeffs()) den = den / gcd(den, denominator(c)) * denominator(c);
    std::vector<ZZ> ic;
    for (auto& c : p.coeffs()) ic.push_back(numerator(c) * (den / denominator(c)));
    while (!ic.empty() && ic.back() == 0) ic.pop_back();
    int low = 0;
    while (low < static_cast<int>(ic.size()) && ic[low] == 0) ++low;
    if (low > 0) roots.push_back(QQ(0));
    ZZ a0 = abs_z(ic[low]), an = abs_z(ic.back());
    auto divisors = [](const ZZ& n) {
        std::vector<ZZ> ds;
        for (auto& [p2, k] : factorize(n)) {
            size_t sz = ds.size();
            (void)sz;
            if (ds.empty()) ds.push_back(1);
            std::vector<ZZ> nds;
            for (auto& d : ds) {
                ZZ pk = 1;
                for (long i = 0; i <= k; ++i) {
                    nds.push_back(d * pk);
                    pk *= p2;
                }
            }
            ds = nds;
        }
        if (ds.empty()) ds.push_back(1);
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        return ds;
    };
    for (auto& pnum : divisors(a0))
        for (auto& pden : divisors(an))
            for (int s : {1, -1}) {
                QQ cand = make_qq(s * pnum, pden);
                if (p.eval(cand) == 0) roots.push_back(cand);
            }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// univariate irreducibility over Q at desk degrees (<= 4): rational roots
// plus the quadratic-pair test for quartics
bool univariate_irreducible(const Poly<QQ>& p) {
    int d = p.degree();
    if (d <= 1) return d == 1;
    if (!rational_roots(p).empty()) return false;
    if (d == 2 || d == 3) return true;  // no rational root => irreducible at these degrees
    if (d != 4) return false;           // out of scope; callers treat as inconclusive
    // monicize: q = p / lead, try q = (X^2+aX+b)(X^2+cX+d0) with rational b,d0
    Poly<QQ> q = p.scaled(QQ(1) / p.leading());
    QQ e3 = q[3], e2 = q[2], e1 = q[1], e0 = q[0];
    // b*d0 = e0; candidates from divisor pairs of the cleared constant
    ZZ num = numerator(e0), den = denominator(e0);
    if (num == 0) return false;  // root at 0 was caught already; defensive
    std::vector<QQ> cands;
    for (auto& dn : std::vector<ZZ>{1, den}) {
        ZZ lim = abs_z(num) * dn;
        for (ZZ t = 1; t * t <= lim; ++t) {
            if (lim % t != 0) continue;
            ZZ other = lim / t;
            for (const ZZ& val : {t, other})
                for (int s : {1, -1})
                    cands.push_back(make_qq(s * val, dn));
        }
    }
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (auto& b : cands) {
        if (b == 0) continue;
        QQ d0 = e0 / b;
        // a + c = e3, b + d0 + a*c = e2, a*d0 + b*c = e1
        // => a*c = e2 - b - d0, and a*d0 + b*(e3 - a) = e1
        QQ denom = d0 - b;
        QQ a, c;
        if (denom != 0) {
            a = (e1 - b * e3) / denom;
            c = e3 - a;
        } else {
            // b == d0: a*c = e2-2b, a+c = e3: solve the quadratic by roots
            Poly<QQ> t(std::vector<QQ>{e2 - 2 * b, -e3, QQ(1)});
            auto rs = rational_roots(t);
            if (rs.empty()) continue;
            a = rs[0];
            c = e3 - a;
        }
        if (a * c == e2 - b - d0 && a * d0 + b * c == e1) return false;  // factored
    }
    return true;
}

// desk irreducibility gate for >= 3 monomials, degree <= 4; throws on
// reducible input (listing the factor when reconstructible) or when the
// simple tests cannot decide
void irreducibility_gate(const Poly2& f) {
    if (f.total_degree() > 4)
        throw precondition_error("irreducibility check limited to total degree <= 4");
    // content in Y: gcd of the X-coefficients
    auto cs = f.coeffs_in_x();
    Poly<QQ> content;
    for (auto& c : cs)
        if (!c.is_zero()) content = content.is_zero() ? c : poly_gcd(content, c);
    if (content.degree() > 0)
        throw precondition_error("reducible: common factor in Y: " + content.str("Y"));

    // a specialization of full X-degree that stays irreducible certifies f
    int dx = f.degree_x();
    if (dx == 0) {
        // polynomial in Y alone
        if (univariate_irreducible(cs[0])) return;
        throw precondition_error("reducible univariate constraint: " + f.str());
    }
    std::vector<QQ> samples{QQ(0), QQ(1), QQ(-1), QQ(2), QQ(-2), QQ(3), QQ(-3)};
    std::vector<std::pair<QQ, std::vector<QQ>>> specs;  // (y0, rational roots)
    for (auto& y0 : samples) {
        std::vector<QQ> coef;
        for (auto& c : cs) coef.push_back(c.eval(y0));
        Poly<QQ> sp(coef);
        if (sp.degree() != dx) continue;
        if (univariate_irreducible(sp)) return;
        specs.emplace_back(y0, rational_roots(sp));
        if (specs.size() >= 2) break;
    }
    if (specs.size() < 2)
        throw precondition_error("irreducibility test inconclusive at desk scale for " + f.str());
    // attempt linear-factor reconstruction X = alpha*Y + beta
    for (auto& r0 : specs[0].second)
        for (auto& r1 : specs[1].second) {
            QQ y0 = specs[0].first, y1 = specs[1].first;
            QQ alpha = (r1 - r0) / (y1 - y0);
            QQ beta = r0 - alpha * y0;
            // check f(alpha*Y + beta, Y) == 0
            Poly<QQ> sub(std::vector<QQ>{beta, alpha});
            Poly<QQ> total;
            for (int i = 0; i <= dx; ++i) {
                Poly<QQ> xi(std::vector<QQ>{QQ(1)});
                for (int j = 0; j < i; ++j) xi = xi * sub;
                total = total + xi * cs[i];
            }
            if (total.is_zero())
                throw precondition_error("reducible: factor X - (" + sub.str("Y") + ")");
        }
    throw precondition_error("irreducibility test inconclusive at desk scale for " + f.str());
}

} // namespace

std::optional<SubtorusData> is_subtorus_translate(const Poly2& f) {
    if (f.is_zero()) throw precondition_error("zero polynomial");
    if (f.min_deg_x() > 0 || f.min_deg_y() > 0)
        throw precondition_error("polynomial must not be divisible by X or Y");
    if (f.monomials() == 1) throw precondition_error("monomial has empty zero locus in the torus");

    if (f.monomials() != 2) {
        irreducibility_gate(f);
        return std::nullopt;
    }

    auto it = f.terms().begin();
    auto [e2, c2] = *it++;
    auto [e1, c1] = *it;  // e1 > e2 in map order
    long dX = e1.first - e2.first, dY = e1.second - e2.second;
    long q = std::gcd(std::abs(dX), std::abs(dY));
    if (q > 1)
        throw precondition_error("geometrically reducible binomial: exponent difference (" +
                                 std::to_string(dX) + "," + std::to_string(dY) +
                                 ") has content " + std::to_string(q) +
                                 "; it factors over the algebraic closure");
    if (dX > 0 && dY > 0) return std::nullopt;  // same-sign difference: no subtorus line

    long d = std::abs(dX), e = std::abs(dY);
    // solve u0^dX * v0^dY = -c2/c1, i.e. u0^d * v0^{-e} = c (after orienting)
    QQ c = -c2 / c1;
    // orient so that the difference is (d, -e)
    if (dX < 0) c = QQ(1) / c;  // (dX,dY) = (-d, e): invert
    // Bezout: alpha*d - beta*e = 1
    long alpha = 0, beta = 0;
    {
        // extended gcd for (d, e): find s,t with s*d + t*e = 1
        long s0 = 1, s1 = 0, t0 = 0, t1 = 1, r0 = d, r1 = e;
        while (r1 != 0) {
            long qq = r0 / r1;
            std::tie(r0, r1) = std::make_tuple(r1, r0 - qq * r1);
            std::tie(s0, s1) = std::make_tuple(s1, s0 - qq * s1);
            std::tie(t0, t1) = std::make_tuple(t1, t0 - qq * t1);
        }
        // s0*d + t0*e == 1
        alpha = s0;
        beta = -t0;
    }
    auto qpow = [](const QQ& base, long k) {
        QQ v(1);
        for (long i = 0; i < std::abs(k); ++i) {
            if (k > 0) v *= base;
            else v /= base;
        }
        return v;
    };
    SubtorusData out;
    out.d = d;
    out.e = e;
    out.u0 = qpow(c, alpha);
    out.v0 = qpow(c, beta);
    // symbolic verification: f(u0*T^e, v0*T^d) vanishes identically; for a
    // binomial this is exactly the equality of the two monomial images
    QQ m1 = c1 * qpow(out.u0, e1.first) * qpow(out.v0, e1.second);
    QQ m2 = c2 * qpow(out.u0, e2.first) * qpow(out.v0, e2.second);
    long t1 = e1.first * e + e1.second * d;
    long t2 = e2.first * e + e2.second * d;
    if (!(t1 == t2 && m1 + m2 == 0))
        throw std::logic_error("subtorus base point does not satisfy the binomial");
    return out;
}

std::vector<std::pair<long, long>> exponential_solutions(const LatticePointProblem& prob, long M) {
    if (M < 0) throw precondition_error("bound must be >= 0");
    std::vector<std::pair<long, long>> out;
    QQ xm(1);
    for (long m = 0; m <= M; ++m) {
        QQ yn(1);
        for (long n = 0; n <= M; ++n) {
            if (prob.f.eval(xm, yn) == 0) out.emplace_back(m, n);
            yn *= prob.y;
        }
        xm *= prob.x;
    }
    return out;
}

DichotomyResult classify_dichotomy(const LatticePointProblem& prob, long M) {
    DichotomyResult res;
    res.bound = M;
    res.solutions = exponential_solutions(prob, M);

    // inversion reduction to |x|, |y| > 1 (strip any monomial factor created)
    Poly2 f = prob.f;
    QQ x = prob.x, y = prob.y;
    if (abs_q(x) < 1) {
        Poly2 g;
        for (auto& [e, c] : f.terms())
            g = g + Poly2::monomial(c, f.degree_x() - e.first, e.second);
        f = g;
        x = QQ(1) / x;
    }
    if (abs_q(y) < 1) {
        Poly2 g;
        for (auto& [e, c] : f.terms())
            g = g + Poly2::monomial(c, e.first, f.degree_y() - e.second);
        f = g;
        y = QQ(1) / y;
    }
    {
        Poly2 g;
        int mx = f.min_deg_x(), my = f.min_deg_y();
        for (auto& [e, c] : f.terms())
            g = g + Poly2::monomial(c, e.first - mx, e.second - my);
        f = g;
    }

    auto sub = is_subtorus_translate(f);
    if (!sub) return res;
    auto dep = multiplicative_dependence(x, y);
    if (!dep) return res;

    res.step_m = dep->b * sub->e;
    res.step_n = dep->a * sub->d;
    if (res.step_m == 0 && res.step_n == 0) return res;
    if (res.solutions.empty()) return res;

    auto qpow = [](const QQ& base, long k) {
        QQ v(1);
        for (long i = 0; i < k; ++i) v *= base;
        return v;
    };
    res.invariant_x = qpow(prob.x, res.step_m);
    res.invariant_y = qpow(prob.y, res.step_n);

    // the invariant element must preserve the curve: f(ix*X, iy*Y) must be
    // proportional to f
    Poly2 scaled = prob.f.scale_args(res.invariant_x, res.invariant_y);
    QQ ratio;
    bool first = true, proportional = true;
    for (auto& [e, c] : prob.f.terms()) {
        auto it = scaled.terms().find(e);
        if (it == scaled.terms().end()) { proportional = false; break; }
        QQ r = it->second / c;
        if (first) { ratio = r; first = false; }
        else if (r != ratio) { proportional = false; break; }
    }
    if (!proportional || scaled.monomials() != prob.f.monomials()) return res;

    // progression check from the smallest enumerated solution, verified by
    // exact evaluation beyond the scan bound
    auto [m0, n0] = res.solutions.front();
    QQ fx = prob.f.eval(qpow(prob.x, m0 + res.step_m), qpow(prob.y, n0 + res.step_n));
    if (fx != 0) return res;
    for (auto& [m, n] : res.solutions) {
        long dm = m - m0, dn = n - n0;
        bool on_progression =
            (res.step_m == 0 ? dm == 0 : dm % res.step_m == 0) &&
            (res.step_n == 0 ? dn == 0 : dn % res.step_n == 0) &&
            (res.step_m == 0 || res.step_n == 0 || dm / res.step_m == dn / res.step_n);
        if (!on_progression) return res;
    }

    res.subtorus = true;
    res.torus = *sub;
    return res;
}

} // namespace markoff
