#pragma once

#include "risch/poly.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace risch {

/// Reduced quotient of polynomials: gcd(num, den) = 1 and den monic.
template <class F>
class RatFrac {
public:
    RatFrac() : num_(), den_(F(1L)) {}
    RatFrac(Poly<F> p) : num_(std::move(p)), den_(F(1L)) {}
    RatFrac(Poly<F> num, Poly<F> den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.zero()) throw std::domain_error("rational function with zero denominator");
        normalize();
    }

    const Poly<F>& num() const { return num_; }
    const Poly<F>& den() const { return den_; }
    bool zero() const { return num_.zero(); }

    friend RatFrac operator+(const RatFrac& a, const RatFrac& b) {
        if (a.den_ == b.den_) return RatFrac(a.num_ + b.num_, a.den_);
        return RatFrac(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFrac operator-(const RatFrac& a, const RatFrac& b) {
        if (a.den_ == b.den_) return RatFrac(a.num_ - b.num_, a.den_);
        return RatFrac(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFrac operator*(const RatFrac& a, const RatFrac& b) {
        return RatFrac(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFrac operator/(const RatFrac& a, const RatFrac& b) {
        if (b.zero()) throw std::domain_error("division by zero rational function");
        return RatFrac(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFrac& a, const RatFrac& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    void normalize() {
        if (num_.zero()) {
            den_ = Poly<F>(F(1L));
            return;
        }
        Poly<F> g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        if (!(den_.lc() == F(1L))) {
            F inv = F(1L) / den_.lc();
            num_ = num_.scale(inv);
            den_ = den_.scale(inv);
        }
    }
    Poly<F> num_;
    Poly<F> den_;
};

template <class F>
struct PartialFractionTerm {
    Poly<F> num;
    Poly<F> factor;
    int power;
};

template <class F>
struct PartialFractions {
    Poly<F> polypart;
    std::vector<PartialFractionTerm<F>> terms;
};

/// Full partial fraction decomposition with respect to a given coprime
/// factorization of the denominator: f = polypart + sum num/factor^power,
/// deg(num) < deg(factor).
template <class F>
PartialFractions<F> partial_fractions(const Poly<F>& num, const Poly<F>& den,
                                      const std::vector<std::pair<Poly<F>, int>>& denfactors) {
    auto [q, r] = divmod(num, den);
    PartialFractions<F> out{q, {}};
    Poly<F> prod(F(1L));
    std::vector<Poly<F>> powers;
    for (const auto& [v, m] : denfactors) {
        if (v.degree() < 1 || m < 1) throw std::invalid_argument("partial fractions: bad factor");
        powers.push_back(pow(v, m));
        prod = prod * powers.back();
    }
    if (!(monic(prod) == monic(den)))
        throw std::invalid_argument("partial fractions: factors do not multiply to the denominator");
    for (std::size_t i = 0; i < powers.size(); ++i)
        for (std::size_t j = i + 1; j < powers.size(); ++j)
            if (gcd(denfactors[i].first, denfactors[j].first).degree() > 0)
                throw std::invalid_argument("partial fractions: factors not coprime");
    if (r.zero()) return out;
    // den = u * prod; r/den = sum A_j / P_j with A_j = (r/u) * (prod/P_j)^{-1} mod P_j
    F unit = den.lc() / prod.lc();
    Poly<F> rr = r.scale(F(1L) / unit);
    for (std::size_t j = 0; j < powers.size(); ++j) {
        const Poly<F>& P = powers[j];
        Poly<F> cof = exact_div(prod, P);
        auto e = gcd_ext(cof, P);  // e.s*cof = 1 mod P
        Poly<F> A = divmod(rr * e.s, P).rem;
        const auto& [v, m] = denfactors[j];
        // v-adic expansion A = sum_i b_i v^i
        for (int i = 0; !A.zero(); ++i) {
            auto [qq, b] = divmod(A, v);
            if (!b.zero()) out.terms.push_back({b, v, m - i});
            A = qq;
        }
    }
    return out;
}

}  // namespace risch
