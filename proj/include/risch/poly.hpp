#pragma once

// Dense univariate polynomials over an abstract coefficient type.
//
// Coefficient requirements: value semantics, construction from `long`
// (0 and 1 in particular), +, -, *, ==, and the free functions
// `is_zero(const F&)` and `exact_div(const F&, const F&)`. Field routines
// (division with remainder, gcd, squarefree) additionally use operator/.

#include "risch/rat.hpp"

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace risch {

inline bool is_zero(const Rat& r) { return r.is_zero(); }
inline Rat exact_div(const Rat& a, const Rat& b) { return a / b; }

template <class F>
class Poly {
public:
    using coeff_type = F;

    Poly() = default;
    Poly(long c) : Poly(F(c)) {}
    Poly(F c) {
        if (!is_zero(c)) c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(F c, int k) {
        if (is_zero(c)) return {};
        std::vector<F> v(static_cast<std::size_t>(k) + 1, F(0L));
        v.back() = std::move(c);
        return Poly(std::move(v));
    }
    static Poly var() { return monomial(F(1L), 1); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    std::size_t size() const { return c_.size(); }
    const std::vector<F>& coeffs() const& { return c_; }
    std::vector<F> coeffs()&& { return std::move(c_); }

    F coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F(0L);
        return c_[static_cast<std::size_t>(i)];
    }
    const F& lc() const {
        if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c_.back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = F(0L) - c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0L));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0L));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.zero() || b.zero()) return {};
        std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0L));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scale(const F& s) const {
        if (is_zero(s)) return {};
        Poly r = *this;
        for (auto& c : r.c_) c = c * s;
        r.trim();
        return r;
    }
    /// Multiplies by var^k.
    Poly shift(int k) const {
        if (zero() || k == 0) return *this;
        std::vector<F> v(static_cast<std::size_t>(k), F(0L));
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Formal derivative with respect to the polynomial variable.
    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<F> v;
        v.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * F(static_cast<long>(i)));
        return Poly(std::move(v));
    }

    template <class G>
    G eval(const G& x) const {
        G acc(0L);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + G(*it);
        return acc;
    }

    /// Applies `fn` to every coefficient; the result is re-trimmed.
    template <class Fn>
    auto map(Fn&& fn) const {
        using G = decltype(fn(std::declval<const F&>()));
        std::vector<G> v;
        v.reserve(c_.size());
        for (const auto& c : c_) v.push_back(fn(c));
        return Poly<G>(std::move(v));
    }

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
};

template <class F>
bool is_zero(const Poly<F>& p) {
    return p.zero();
}

template <class F>
Poly<F> operator*(const Poly<F>& p, const F& s) {
    return p.scale(s);
}

template <class F>
Poly<F> pow(Poly<F> base, int e) {
    Poly<F> r(F(1L));
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Field algorithms

template <class F>
struct DivMod {
    Poly<F> quot;
    Poly<F> rem;
};

template <class F>
DivMod<F> divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.zero()) throw std::domain_error("polynomial division by zero");
    const int db = b.degree();
    if (a.degree() < db) return {Poly<F>(), a};
    std::vector<F> r = a.coeffs();
    std::vector<F> q(static_cast<std::size_t>(a.degree() - db) + 1, F(0L));
    const F& lb = b.lc();
    for (int k = a.degree() - db; k >= 0; --k) {
        const F& top = r[static_cast<std::size_t>(k + db)];
        if (is_zero(top)) continue;
        F f = top / lb;
        for (int j = 0; j <= db; ++j) {
            auto idx = static_cast<std::size_t>(k + j);
            r[idx] = r[idx] - f * b.coeffs()[static_cast<std::size_t>(j)];
        }
        q[static_cast<std::size_t>(k)] = std::move(f);
    }
    r.resize(static_cast<std::size_t>(db));
    return {Poly<F>(std::move(q)), Poly<F>(std::move(r))};
}

template <class F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).quot;
}
template <class F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
    return divmod(a, b).rem;
}

/// Exact polynomial quotient; throws std::domain_error when b does not divide a.
template <class F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

template <class F>
bool divides(const Poly<F>& d, const Poly<F>& p) {
    return divmod(p, d).rem.zero();
}

template <class F>
Poly<F> monic(const Poly<F>& p) {
    if (p.zero()) return p;
    return p.scale(F(1L) / p.lc());
}

template <class F>
Poly<F> gcd(Poly<F> a, Poly<F> b) {
    a = monic(a);
    b = monic(b);
    while (!b.zero()) {
        // monic remainders keep coefficient growth down over function fields
        Poly<F> r = monic(divmod(a, b).rem);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

template <class F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
    if (a.zero() || b.zero()) return {};
    return monic(exact_div(a * b, gcd(a, b)));
}

template <class F>
struct GcdExt {
    Poly<F> g;
    Poly<F> s;
    Poly<F> t;
};

/// Extended Euclid: g = s*a + t*b with g monic (g = s = t = 0 for a = b = 0).
template <class F>
GcdExt<F> gcd_ext(const Poly<F>& a, const Poly<F>& b) {
    Poly<F> r0 = a, r1 = b;
    Poly<F> s0(F(1L)), s1, t0, t1(F(1L));
    while (!r1.zero()) {
        auto [q, r] = divmod(r0, r1);
        Poly<F> s2 = s0 - q * s1;
        Poly<F> t2 = t0 - q * t1;
        if (!r.zero()) {
            F inv = F(1L) / r.lc();
            r = r.scale(inv);
            s2 = s2.scale(inv);
            t2 = t2.scale(inv);
        }
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.zero()) return {};
    F inv = F(1L) / r0.lc();
    return {r0.scale(inv), s0.scale(inv), t0.scale(inv)};
}

/// Solves s*a + t*b = c for s with deg(s) < deg(b), given gcd(a, b) | c.
template <class F>
std::pair<Poly<F>, Poly<F>> solve_diophantine(const Poly<F>& a, const Poly<F>& b,
                                              const Poly<F>& c) {
    auto e = gcd_ext(a, b);
    auto [q, r] = divmod(c, e.g);
    if (!r.zero()) throw std::domain_error("diophantine equation has no solution");
    Poly<F> s = e.s * q;
    Poly<F> t = e.t * q;
    if (!b.zero() && s.degree() >= b.degree()) {
        auto [qq, rr] = divmod(s, b);
        s = rr;
        t = t + qq * a;
    }
    return {s, t};
}

template <class F>
struct SqfFactor {
    Poly<F> factor;
    int multiplicity;
};

/// Yun's squarefree factorization (characteristic zero). Factors are monic,
/// pairwise coprime; p = lc(p) * prod factor^multiplicity.
template <class F>
std::vector<SqfFactor<F>> squarefree(const Poly<F>& p) {
    if (p.zero()) throw std::domain_error("squarefree factorization of zero");
    std::vector<SqfFactor<F>> out;
    if (p.degree() == 0) return out;
    Poly<F> a = monic(p);
    Poly<F> b = a.derivative();
    Poly<F> c = gcd(a, b);
    Poly<F> w = exact_div(a, c);
    Poly<F> y = exact_div(b, c);
    Poly<F> z = y - w.derivative();
    for (int i = 1; w.degree() > 0; ++i) {
        Poly<F> g = gcd(w, z);
        if (g.degree() > 0) out.push_back({g, i});
        w = exact_div(w, g);
        y = exact_div(z, g);
        z = y - w.derivative();
    }
    return out;
}

/// Product of the distinct squarefree factors.
template <class F>
Poly<F> squarefree_part(const Poly<F>& p) {
    if (p.degree() <= 0) return Poly<F>(F(1L));
    return monic(exact_div(p, gcd(p, p.derivative())));
}

// ---------------------------------------------------------------------------
// Integral-domain algorithms (coefficients need only ring ops + exact_div)

template <class F>
F pow_coeff(const F& b, int e) {
    F r(1L);
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
}

/// lc(b)^(deg a - deg b + 1) * a = q*b + r.
template <class F>
DivMod<F> pseudo_divmod(const Poly<F>& a, const Poly<F>& b) {
    if (b.zero()) throw std::domain_error("pseudo division by zero");
    const F& lb = b.lc();
    int n = a.degree() - b.degree() + 1;
    Poly<F> q, r = a;
    while (!r.zero() && r.degree() >= b.degree()) {
        Poly<F> t = Poly<F>::monomial(r.lc(), r.degree() - b.degree());
        --n;
        q = q.scale(lb) + t;
        r = r.scale(lb) - t * b;
    }
    if (n > 0) {
        F f = pow_coeff(lb, n);
        q = q.scale(f);
        r = r.scale(f);
    }
    return {q, r};
}

template <class F>
struct SubresultantResult {
    F resultant;
    std::vector<Poly<F>> prs;  // R0 = a, R1 = b, R2, ...
};

/// Subresultant polynomial remainder sequence of a and b, deg(a) >= deg(b).
/// The resultant follows the Sylvester-matrix convention (rows of a first).
template <class F>
SubresultantResult<F> subresultant_prs(const Poly<F>& a, const Poly<F>& b) {
    if (a.zero() && b.zero()) throw std::domain_error("subresultant of two zero polynomials");
    if (a.degree() < b.degree()) {
        auto r = subresultant_prs(b, a);
        if ((a.degree() * b.degree()) % 2 != 0) r.resultant = F(0L) - r.resultant;
        return r;
    }
    if (b.zero()) return {a.degree() == 0 ? F(1L) : F(0L), {a}};
    std::vector<Poly<F>> R{a, b};
    std::vector<F> r{F(0L)}, beta{F(0L)}, gamma{F(0L)};
    std::vector<int> delta{0};
    // index 1 quantities
    gamma.push_back(F(-1L));
    delta.push_back(a.degree() - b.degree());
    beta.push_back((delta[1] + 1) % 2 == 0 ? F(1L) : F(-1L));
    std::size_t i = 1;
    while (!R[i].zero()) {
        if (r.size() <= i) r.resize(i + 1, F(0L));
        r[i] = R[i].lc();
        Poly<F> rem = pseudo_divmod(R[i - 1], R[i]).rem;
        rem = rem.map([&](const F& c) { return exact_div(c, beta[i]); });
        R.push_back(rem);
        ++i;
        // gamma_i = (-r_{i-1})^{delta_{i-1}} * gamma_{i-1}^{1 - delta_{i-1}}
        const int dprev = delta[i - 1];
        F mr = F(0L) - r[i - 1];
        F g;
        if (dprev == 0)
            g = gamma[i - 1];
        else
            g = exact_div(pow_coeff(mr, dprev), pow_coeff(gamma[i - 1], dprev - 1));
        gamma.push_back(g);
        delta.push_back(R[i - 1].degree() - R[i].degree());
        beta.push_back(mr * pow_coeff(g, delta[i]));
    }
    const std::size_t k = i - 1;
    R.pop_back();  // trailing zero
    SubresultantResult<F> out;
    out.prs = R;
    if (R[k].degree() > 0) {
        out.resultant = F(0L);
        return out;
    }
    if (R[k - 1].degree() == 1) {
        out.resultant = R[k].lc();
        return out;
    }
    F s(1L), cnum(1L), cden(1L);
    for (std::size_t j = 1; j < k; ++j) {
        if (R[j - 1].degree() % 2 != 0 && R[j].degree() % 2 != 0) s = F(0L) - s;
        // c *= (beta_j / r_j^{1+delta_j})^{deg R_j} * r_j^{deg R_{j-1} - deg R_{j+1}}
        cnum = cnum * pow_coeff(beta[j], R[j].degree()) *
               pow_coeff(r[j], R[j - 1].degree() - R[j + 1].degree());
        cden = cden * pow_coeff(r[j], (1 + delta[j]) * R[j].degree());
    }
    F val = s * cnum * pow_coeff(R[k].lc(), R[k - 1].degree());
    out.resultant = exact_div(val, cden);
    return out;
}

template <class F>
F resultant(const Poly<F>& a, const Poly<F>& b) {
    return subresultant_prs(a, b).resultant;
}

}  // namespace risch
