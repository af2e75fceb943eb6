#pragma once
// Independent oracles and random generators shared by the property,
// regression and acceptance tests. Nothing here calls the solver under test.

#include "risch/linalg.hpp"
#include "risch/poly.hpp"
#include "risch/ratfrac.hpp"
#include "risch/tower.hpp"

#include <optional>
#include <random>
#include <vector>

namespace oracle {

using risch::Rat;
using risch::TowerElem;
using QPoly = risch::Poly<Rat>;
using QFrac = risch::RatFrac<Rat>;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(g_); }
    Rat small_rat(long h = 5) {
        long d = range(1, 3);
        return Rat(range(-h, h), d);
    }
    Rat nonzero_rat(long h = 5) {
        for (;;) {
            Rat r = small_rat(h);
            if (!r.is_zero()) return r;
        }
    }

private:
    std::mt19937_64 g_;
};

inline QPoly random_poly(Rng& r, int maxdeg, long h = 5) {
    int d = static_cast<int>(r.range(0, maxdeg));
    std::vector<Rat> c;
    for (int i = 0; i < d; ++i) c.push_back(r.small_rat(h));
    c.push_back(r.nonzero_rat(h));
    return QPoly(c);
}

inline QPoly random_monic(Rng& r, int deg, long h = 5) {
    std::vector<Rat> c;
    for (int i = 0; i < deg; ++i) c.push_back(r.small_rat(h));
    c.push_back(Rat(1));
    return QPoly(c);
}

inline QFrac random_frac(Rng& r, int numdeg, int dendeg) {
    return QFrac(random_poly(r, numdeg), random_monic(r, static_cast<int>(r.range(0, dendeg))));
}

inline QFrac frac_derivative(const QFrac& f) {
    const QPoly& n = f.num();
    const QPoly& d = f.den();
    return QFrac(n.derivative() * d - n * d.derivative(), d * d);
}

// Conversions between Q(x) and level-`lx` tower elements.
inline risch::TPoly lift(const QPoly& p) {
    std::vector<TowerElem> c;
    for (const auto& a : p.coeffs()) c.emplace_back(a);
    return risch::TPoly(c);
}

inline TowerElem to_elem(const QFrac& f, int lx) { return TowerElem::fraction(lx, lift(f.num()), lift(f.den())); }

inline QPoly drop(const risch::TPoly& p) {
    std::vector<Rat> c;
    for (const auto& a : p.coeffs()) c.push_back(a.rat());
    return QPoly(c);
}

inline QFrac to_frac(const TowerElem& e, int lx) { return QFrac(drop(e.num_at(lx)), drop(e.den_at(lx))); }

/// Determinant by Gaussian elimination over Q.
inline Rat determinant(risch::Matrix<Rat> m) {
    const std::size_t n = m.size();
    Rat det(1);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return Rat(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det = det * m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (m[r][c].is_zero()) continue;
            Rat f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] = m[r][k] - f * m[c][k];
        }
    }
    return det;
}

/// Sylvester matrix determinant, rows of a first.
inline Rat sylvester_resultant(const QPoly& a, const QPoly& b) {
    const int m = a.degree(), n = b.degree();
    const std::size_t N = static_cast<std::size_t>(m + n);
    if (N == 0) return Rat(1);
    risch::Matrix<Rat> S(N, std::vector<Rat>(N, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) S[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a.coeff(m - j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            S[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b.coeff(n - j);
    return determinant(S);
}

/// Brute-force solver for Dy + u*y = w over Q(x). The denominator ansatz is
/// den(w) * s^R where s is the squarefree part of den(u) and R the largest
/// positive integer residue (<= 40) of u at a simple pole; the numerator has
/// degree at most deg(h) + numdeg.
inline std::optional<QFrac> brute_rde(const QFrac& u, const QFrac& w, int numdeg = 20) {
    const QPoly& ud = u.den();
    const QPoly& un = u.num();
    QPoly s = risch::exact_div(ud, risch::gcd(ud, ud.derivative()));
    // factors of ud of multiplicity one
    QPoly s1 = risch::exact_div(s, risch::gcd(s, risch::exact_div(ud, s)));
    long R = 0;
    if (s1.degree() > 0)
        for (long r = 1; r <= 40; ++r)
            if (risch::gcd(s1, un - ud.derivative().scale(Rat(r))).degree() > 0) R = r;
    QPoly h = w.den();
    for (long i = 0; i < R; ++i) h = h * s;
    if (ud.degree() > 0) h = h * s;  // allowance for poles of u of higher order
    const int N = h.degree() + numdeg + 1;
    const QPoly& wd = w.den();
    const QPoly& wn = w.num();
    // wd*ud*(p'h - p h') + wd*un*p*h = wn*ud*h^2
    QPoly rhs = wn * ud * h * h;
    std::vector<QPoly> cols;
    int rows = rhs.degree() + 1;
    for (int i = 0; i < N; ++i) {
        QPoly p = QPoly::monomial(Rat(1), i);
        QPoly col = wd * ud * (p.derivative() * h - p * h.derivative()) + wd * un * p * h;
        rows = std::max(rows, col.degree() + 1);
        cols.push_back(col);
    }
    risch::Matrix<Rat> A(static_cast<std::size_t>(rows), std::vector<Rat>(static_cast<std::size_t>(N), Rat(0)));
    std::vector<Rat> b(static_cast<std::size_t>(rows), Rat(0));
    for (int i = 0; i < N; ++i)
        for (int k = 0; k <= cols[static_cast<std::size_t>(i)].degree(); ++k)
            A[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)].coeff(k);
    for (int k = 0; k <= rhs.degree(); ++k) b[static_cast<std::size_t>(k)] = rhs.coeff(k);
    auto sol = risch::solve_linear(A, b, static_cast<std::size_t>(N));
    if (!sol.particular) return std::nullopt;
    return QFrac(QPoly(*sol.particular), h);
}

inline bool satisfies_rde(const QFrac& y, const QFrac& u, const QFrac& w) {
    return frac_derivative(y) + u * y == w;
}

}  // namespace oracle

namespace oracle {

/// Random element of level <= L: a quotient of small polynomials in t_L over
/// random elements of lower levels.
inline TowerElem random_elem(Rng& r, int L, int numdeg = 2, int dendeg = 1) {
    if (L < 0) return TowerElem(r.small_rat());
    std::vector<TowerElem> n, d;
    int dn = static_cast<int>(r.range(0, numdeg));
    for (int i = 0; i <= dn; ++i) n.push_back(r.coin(0.3) ? TowerElem(0) : random_elem(r, L - 1, 1, 1));
    int dd = static_cast<int>(r.range(0, dendeg));
    for (int i = 0; i < dd; ++i) d.push_back(random_elem(r, L - 1, 1, 0));
    d.push_back(TowerElem(1));
    return TowerElem::fraction(L, risch::TPoly(n), risch::TPoly(d));
}

/// Random polynomial in t_L of exact degree deg with coefficients of level < L.
inline risch::TPoly random_tpoly(Rng& r, int L, int deg, bool monic = false) {
    std::vector<TowerElem> c;
    for (int i = 0; i < deg; ++i) c.push_back(random_elem(r, L - 1, 1, 0));
    TowerElem top = monic ? TowerElem(1) : TowerElem(r.nonzero_rat());
    c.push_back(top);
    return risch::TPoly(c);
}

}  // namespace oracle
