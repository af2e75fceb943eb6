#include "risch/reduce.hpp"

#include <stdexcept>

namespace risch {

namespace {

using KZ = Poly<TowerElem>;  // K[z]
using PT = Poly<KZ>;         // K[z][t]


void require_normal(const TPoly& d, int L, const Tower& tower) {
    auto sf = splitting_factorization(d, L, tower);
    if (sf.special.degree() > 0) throw std::invalid_argument("hermite_reduce: special factor in denominator");
}

HermiteResult hermite_all_poles(const TFrac& f, int L, const Tower& tower) {
    TPoly A = f.num(), D = f.den();
    TFrac g;
    TPoly Dminus = gcd(D, D.derivative());
    TPoly Dstar = exact_div(D, Dminus);
    while (Dminus.degree() > 0) {
        TPoly Dminus2 = gcd(Dminus, Dminus.derivative());
        TPoly Dms = exact_div(Dminus, Dminus2);
        TPoly W = exact_div(Dstar * derive_poly(Dminus, L, tower), Dminus);
        auto [B, C] = solve_diophantine(-W, Dms, A);
        A = C - derive_poly(B, L, tower) * exact_div(Dstar, Dms);
        g = g + TFrac(B, Dminus);
        Dminus = Dminus2;
    }
    return {TowerElem::fraction(L, g), TFrac(A, Dstar)};
}

HermiteResult hermite_classical(const TFrac& f, int L, const Tower& tower) {
    TPoly a = f.num(), d = f.den();
    TFrac g;
    for (const auto& [v, i] : squarefree(d)) {
        if (i < 2) continue;
        TPoly u = exact_div(d, pow(v, i));
        TPoly uDv = u * derive_poly(v, L, tower);
        for (int j = i - 1; j >= 1; --j) {
            TPoly rhs = a.scale(TowerElem(Rat(-1, j)));
            auto [b, c] = solve_diophantine(uDv, v, rhs);
            g = g + TFrac(b, pow(v, j));
            a = c.scale(TowerElem(-j)) - u * derive_poly(b, L, tower);
        }
        d = u * v;
    }
    return {TowerElem::fraction(L, g), TFrac(a, d)};
}

PT lift_t(const TPoly& p) {
    std::vector<KZ> c;
    for (const auto& e : p.coeffs()) c.emplace_back(e);
    return PT(std::move(c));
}

KZ reduce_mod(const KZ& p, const KZ& q) { return divmod(p, q).rem; }

ZPoly transpose(const PT& s, int L) {
    // s = sum_k s_k(z) t^k  ->  sum_m (sum_k s_k[m] t^k) z^m
    int dz = -1;
    for (const auto& c : s.coeffs()) dz = std::max(dz, c.degree());
    std::vector<TowerElem> out;
    for (int m = 0; m <= dz; ++m) {
        std::vector<TowerElem> tc;
        for (const auto& c : s.coeffs()) tc.push_back(c.coeff(m));
        out.push_back(TowerElem::poly(L, TPoly(std::move(tc))));
    }
    return ZPoly(std::move(out));
}

}  // namespace

HermiteResult hermite_reduce(const TFrac& f, int L, const Tower& tower, HermiteVariant variant) {
    if (f.zero()) return {TowerElem(), TFrac()};
    require_normal(f.den(), L, tower);
    if (f.den().degree() == 0) return {TowerElem(), f};
    return variant == HermiteVariant::AllPoles ? hermite_all_poles(f, L, tower)
                                               : hermite_classical(f, L, tower);
}

bool has_constant_coeffs(const ZPoly& p, const Tower& tower) {
    for (const auto& c : p.coeffs())
        if (!tower.is_constant(c)) return false;
    return true;
}

ResidueResult residues_logpart(const TFrac& f, int L, const Tower& tower) {
    ResidueResult out;
    if (f.zero()) return out;
    const TPoly& a = f.num();
    const TPoly& d = f.den();
    if (a.degree() >= d.degree()) throw std::invalid_argument("residues_logpart: improper fraction");
    TPoly Dd = derive_poly(d, L, tower);
    // a - z*Dd as a polynomial in t over K[z]
    std::vector<KZ> az;
    for (int k = 0; k <= std::max(a.degree(), Dd.degree()); ++k)
        az.push_back(KZ(std::vector<TowerElem>{a.coeff(k), -Dd.coeff(k)}));
    PT A(std::move(az));
    PT Dt = lift_t(d);
    auto sr = subresultant_prs(Dt, A);
    KZ R = sr.resultant;
    out.resultant = R;
    if (R.zero()) throw std::logic_error("residues_logpart: vanishing resultant");
    for (const auto& [Q, i] : squarefree(R)) {
        if (Q == KZ::var()) continue;  // residue 0 contributes nothing
        KZ kQ = derive_coeffs(Q, tower);
        if (!kQ.zero()) {
            KZ special = gcd(Q, kQ);
            out.obstruction = exact_div(Q, special);
            return out;
        }
        PT S;
        if (i == d.degree()) {
            S = Dt;
        } else {
            bool found = false;
            for (const auto& row : sr.prs)
                if (row.degree() == i) {
                    S = row;
                    found = true;
                    break;
                }
            if (!found) throw std::logic_error("residues_logpart: no remainder of matching degree");
            KZ lc = S.lc();
            if (lc.degree() > 0) {
                for (const auto& [Aj, j] : squarefree(lc)) {
                    KZ g = gcd(Aj, Q);
                    if (g.degree() <= 0) continue;
                    KZ gj = pow(g, j);
                    S = S.map([&](const KZ& c) { return exact_div(c, gj); });
                }
            }
        }
        S = S.map([&](const KZ& c) { return reduce_mod(c, Q); });
        // monic in t modulo Q when that only rescales by constants
        auto e = gcd_ext(S.lc(), Q);
        if (e.g.degree() == 0 && has_constant_coeffs(e.s, tower))
            S = S.map([&](const KZ& c) { return reduce_mod(c * e.s, Q); });
        out.rootsums.push_back({Q, transpose(S, L), L});
    }
    return out;
}

std::vector<TowerElem> power_sums(const ZPoly& q, int n) {
    const int deg = q.degree();
    std::vector<TowerElem> p(static_cast<std::size_t>(std::max(n, 0)) + 1);
    p[0] = TowerElem(deg);
    for (int k = 1; k <= n; ++k) {
        TowerElem acc = k <= deg ? TowerElem(k) * q.coeff(deg - k) : TowerElem();
        for (int i = 1; i <= std::min(k - 1, deg); ++i) acc = acc + q.coeff(deg - i) * p[static_cast<std::size_t>(k - i)];
        p[static_cast<std::size_t>(k)] = -acc;
    }
    return p;
}

TowerElem rootsum_derivative(const RootSum& rs, const Tower& tower) {
    const ZPoly& q = rs.rpoly;
    ZPoly Ds = derive_coeffs(rs.logand, tower);
    if (Ds.zero()) return TowerElem();
    auto e = gcd_ext(rs.logand, q);
    if (e.g.degree() != 0) throw std::logic_error("rootsum_derivative: logand vanishes at a root");
    ZPoly h = divmod(ZPoly::var() * Ds * e.s, q).rem;
    auto ps = power_sums(q, h.degree());
    TowerElem tr;
    for (int k = 0; k <= h.degree(); ++k) tr = tr + h.coeff(k) * ps[static_cast<std::size_t>(k)];
    return tr;
}

TowerElem subtract_logderivative(const TowerElem& f, const std::vector<RootSum>& rootsums,
                                 const Tower& tower) {
    TowerElem r = f;
    for (const auto& rs : rootsums) r = r - rootsum_derivative(rs, tower);
    return r;
}

RootSum scale_rootsum(const RootSum& rs, const TowerElem& lambda) {
    if (lambda.zero()) throw std::invalid_argument("scale_rootsum: zero factor");
    const int n = rs.rpoly.degree();
    std::vector<TowerElem> q, s;
    for (int k = 0; k <= n; ++k) q.push_back(rs.rpoly.coeff(k) * lambda.pow(n - k));
    for (int k = 0; k <= rs.logand.degree(); ++k) s.push_back(rs.logand.coeff(k) * lambda.pow(-k));
    return {ZPoly(std::move(q)), ZPoly(std::move(s)), rs.level};
}

namespace {

using QPoly = Poly<Rat>;

int sign_changes(const std::vector<QPoly>& seq, const Rat& x) {
    int n = 0, last = 0;
    for (const auto& p : seq) {
        int s = p.eval(x).sign();
        if (s == 0) continue;
        if (last != 0 && s != last) ++n;
        last = s;
    }
    return n;
}

// integer roots of a monic squarefree polynomial in (a, b], by Sturm bisection
void integer_roots_in(const QPoly& q, const std::vector<QPoly>& sturm, mpz_class a, mpz_class b, int va, int vb,
                      std::vector<mpz_class>& out) {
    if (va - vb <= 0) return;
    if (b - a == 1) {
        if (q.eval(Rat(b)).is_zero()) out.push_back(b);
        return;
    }
    mpz_class m;
    mpz_fdiv_q_2exp(m.get_mpz_t(), mpz_class(a + b).get_mpz_t(), 1);
    int vm = sign_changes(sturm, Rat(m));
    integer_roots_in(q, sturm, a, m, va, vm, out);
    integer_roots_in(q, sturm, m, b, vm, vb, out);
}

}  // namespace

std::vector<Rat> rational_roots(Poly<Rat> q) {
    std::vector<Rat> roots;
    if (q.zero()) return roots;
    while (q.degree() > 0 && q.coeff(0).is_zero()) {
        roots.emplace_back(0);
        q = exact_div(q, QPoly::var());
    }
    if (q.degree() <= 0) return roots;
    q = squarefree_part(q);
    const int n = q.degree();
    // primitive integer coefficients c_i, then w = c_n z turns q into a monic integer polynomial
    mpz_class l = 1;
    for (const auto& c : q.coeffs()) l = lcm(l, c.den());
    std::vector<mpz_class> c;
    for (const auto& v : q.coeffs()) c.push_back((v * Rat(l)).num());
    const mpz_class& cn = c.back();
    std::vector<Rat> mc;
    mpz_class bound = 0;
    for (int i = 0; i < n; ++i) {
        mpz_class p;
        mpz_pow_ui(p.get_mpz_t(), cn.get_mpz_t(), static_cast<unsigned long>(n - 1 - i));
        mc.emplace_back(mpz_class(c[static_cast<std::size_t>(i)] * p));
        bound = std::max(bound, mpz_class(::abs(mc.back().num())));
    }
    mc.emplace_back(1);
    bound += 1;
    QPoly m(mc);
    std::vector<QPoly> sturm{m, m.derivative()};
    while (sturm.back().degree() > 0) {
        QPoly r = -(sturm[sturm.size() - 2] % sturm.back());
        if (r.zero()) break;
        sturm.push_back(r);
    }
    mpz_class lo = -bound - 1, hi = bound;
    std::vector<mpz_class> ws;
    integer_roots_in(m, sturm, lo, hi, sign_changes(sturm, Rat(lo)), sign_changes(sturm, Rat(hi)), ws);
    for (const auto& w : ws) roots.emplace_back(w, cn);
    return roots;
}

ExpandedRootSum expand_rational_roots(const RootSum& rs) {
    ExpandedRootSum out;
    ZPoly rest = rs.rpoly;
    std::vector<Rat> qc;
    for (const auto& e : rs.rpoly.coeffs()) {
        if (!e.is_rational()) {
            out.rest = rs;
            return out;
        }
        qc.push_back(e.rat());
    }
    for (const Rat& r : rational_roots(Poly<Rat>(std::move(qc)))) {
        TowerElem z0(r);
        rest = exact_div(rest, ZPoly(std::vector<TowerElem>{-z0, TowerElem(1)}));
        if (r.is_zero()) continue;
        out.logs.push_back({z0, rs.logand.eval(z0)});
    }
    if (rest.degree() > 0) out.rest = RootSum{rest, divmod(rs.logand, rest).rem, rs.level};
    return out;
}

TPoly residue_function(const TPoly& a, const TPoly& d, int L, const Tower& tower) {
    TPoly Dd = derive_poly(d, L, tower);
    auto e = gcd_ext(Dd, d);
    if (e.g.degree() != 0) throw std::invalid_argument("residue_function: denominator not normal");
    return divmod(a * e.s, d).rem;
}

TPoly residue_variation(const TPoly& a, const TPoly& d, int L, const Tower& tower) {
    TPoly rho = residue_function(a, d, L, tower);
    auto e = gcd_ext(d.derivative(), d);
    if (e.g.degree() != 0) throw std::invalid_argument("residue_variation: denominator not squarefree");
    TPoly delta = derive_coeffs(rho, tower) - rho.derivative() * derive_coeffs(d, tower) * e.s;
    return divmod(delta, d).rem;
}

}  // namespace risch
