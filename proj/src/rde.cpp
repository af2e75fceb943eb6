#include "risch/rde.hpp"

#include "risch/parametric.hpp"

#include <algorithm>
#include <stdexcept>

namespace risch {

namespace {

using KZ = Poly<TowerElem>;
using PT = Poly<KZ>;

TowerElem base_var(const Tower& T) {
    if (T.base_level() < 0) throw std::logic_error("tower has no base variable");
    return TowerElem::generator(T.base_level());
}

// Kernel of  sum_j p_j (D phi_j + u phi_j) - sum_i c_i w_i = 0  over the constants,
// reduced to solutions with independent nonzero c-parts.
ParamRdeResult solve_ansatz(const std::vector<TowerElem>& phis, const TowerElem& u,
                            const std::vector<TowerElem>& ws, const Tower& T) {
    const std::size_t m = ws.size(), n = phis.size();
    std::vector<TowerElem> row;
    row.reserve(m + n);
    for (const auto& w : ws) row.push_back(-w);
    for (const auto& phi : phis) row.push_back(derive(phi, T) + u * phi);
    auto ker = constant_kernel({row}, m + n, T);
    auto ech = echelon_on(std::move(ker), 0, m);
    ParamRdeResult out;
    for (const auto& v : ech) {
        ParamRdeSolution s;
        s.c.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(m));
        for (std::size_t j = 0; j < n; ++j)
            if (!v[m + j].zero()) s.y = s.y + v[m + j] * phis[j];
        out.solutions.push_back(std::move(s));
    }
    return out;
}

int rational_degree(const TowerElem& e, int L) {
    if (e.zero()) return -1;
    return e.num_at(L).degree() - e.den_at(L).degree();
}

ParamRdeResult param_rde_base(const TowerElem& u, const std::vector<TowerElem>& ws, const Tower& T) {
    const int B = T.base_level();
    TowerElem q = weak_normalizer(u, T);
    TowerElem u1 = u - derive(q, T) / q;
    TowerElem h = rde_denominator_bound(u1, ws, T);
    TowerElem qh = q * h;
    TowerElem U = u - derive(qh, T) / qh;
    TPoly a = U.den_at(B), b = U.num_at(B);
    int dc = -1;
    TowerElem scale = TowerElem::poly(B, a) * qh;
    bool any = false;
    for (const auto& w : ws) {
        if (w.zero()) continue;
        int d = rational_degree(scale * w, B);
        dc = any ? std::max(dc, d) : d;
        any = true;
    }
    int n = any ? rde_degree_bound(a, b, dc) : 0;
    std::vector<TowerElem> phis;
    TowerElem x = base_var(T), inv = qh.inverse(), xp = inv;
    for (int j = 0; j <= n; ++j) {
        phis.push_back(xp);
        xp = xp * x;
    }
    return solve_ansatz(phis, u, ws, T);
}

bool is_t_monomial(const TowerElem& f, int l) {
    if (f.level() != l) return false;
    const TPoly p = f.num_at(l);
    for (int k = 0; k < p.degree(); ++k)
        if (!p.coeff(k).zero()) return false;
    return true;
}

ParamRdeResult param_rde_bounded(const TowerElem& u, const std::vector<TowerElem>& ws, int level,
                                 const Tower& T, const RdeOptions& opt) {
    const int B = T.base_level();
    const int ng = level - B + 1;
    std::vector<int> lo(static_cast<std::size_t>(ng), 0), hi(static_cast<std::size_t>(ng), 0);
    // common flat denominator; pure powers of exponential generators become negative exponents
    std::vector<std::pair<TowerElem, int>> facs;
    Rat intden(1);
    auto absorb = [&](const TowerElem& e, bool into_den) {
        FlatForm ff = flat_form(e);
        if (into_den) intden = Rat(mpz_class(lcm(intden.num(), ff.intden.num())));
        for (const auto& [f, m] : ff.den) {
            int l = f.level();
            if (l >= B && T.is_exp_like(l) && is_t_monomial(f, l)) {
                auto& v = lo[static_cast<std::size_t>(l - B)];
                v = std::min(v, -m * f.num_at(l).degree());
                continue;
            }
            if (!into_den) continue;
            auto it = std::find_if(facs.begin(), facs.end(), [&](const auto& p) { return p.first == f; });
            if (it == facs.end()) facs.push_back({f, m});
            else it->second = std::max(it->second, m);
        }
    };
    for (const auto& w : ws) absorb(w, true);
    absorb(u, false);
    TowerElem E(intden);
    for (const auto& [f, m] : facs) E = E * f.pow(m);
    std::vector<TowerElem> nums;
    for (const auto& w : ws)
        if (!w.zero()) nums.push_back(flat_form(w * E).num);
    nums.push_back(flat_form(u).num);
    for (int l = B; l <= level; ++l) {
        int d = 0;
        for (const auto& nm : nums) d = std::max(d, flat_degree(nm, l));
        hi[static_cast<std::size_t>(l - B)] = std::min(opt.degree_limit, d + 2);
    }
    auto count = [&] {
        long c = 1;
        for (int i = 0; i < ng; ++i) c *= hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)] + 1;
        return c;
    };
    while (count() > opt.max_terms) {
        auto it = std::max_element(hi.begin(), hi.end());
        if (*it <= 0) break;
        --*it;
    }
    std::vector<TowerElem> phis{E.inverse()};
    for (int l = B; l <= level; ++l) {
        if (T.gen(l).kind == GenKind::Constant) continue;
        TowerElem t = TowerElem::generator(l);
        std::vector<TowerElem> next;
        for (const auto& p : phis)
            for (int e = lo[static_cast<std::size_t>(l - B)]; e <= hi[static_cast<std::size_t>(l - B)]; ++e)
                next.push_back(p * t.pow(e));
        phis = std::move(next);
    }
    auto out = solve_ansatz(phis, u, ws, T);
    out.complete = false;
    return out;
}

}  // namespace

std::vector<long> integer_roots(const ZPoly& r, const Tower& tower) {
    (void)tower;
    std::vector<long> out;
    if (r.zero()) return out;
    Poly<Rat> g;
    for (const auto& eq : linear_equations(r.coeffs(), -1)) {
        std::vector<Rat> c;
        for (const auto& e : eq) c.push_back(e.rat());
        Poly<Rat> p(std::move(c));
        if (!p.zero()) g = g.zero() ? p : gcd(g, p);
    }
    if (g.zero()) return out;
    for (const Rat& root : rational_roots(g))
        if (root.is_integer() && root.sign() >= 0 && root.num().fits_slong_p()) out.push_back(root.num().get_si());
    std::sort(out.begin(), out.end());
    return out;
}

TowerElem weak_normalizer(const TowerElem& u, const Tower& T) {
    const int B = T.base_level();
    if (u.zero() || u.level() < B) return TowerElem(1);
    if (u.level() > B) throw std::invalid_argument("weak_normalizer: coefficient above the base field");
    TPoly a = u.num_at(B), d = u.den_at(B);
    TPoly d1(TowerElem(1));
    for (const auto& [f, m] : squarefree(d))
        if (m == 1) d1 = d1 * f;
    if (d1.degree() <= 0) return TowerElem(1);
    TPoly s = solve_diophantine(exact_div(d, d1), d1, a).first;
    TPoly dd1 = d1.derivative();
    std::vector<KZ> az;
    for (int k = 0; k <= std::max(s.degree(), dd1.degree()); ++k)
        az.push_back(KZ(std::vector<TowerElem>{s.coeff(k), -dd1.coeff(k)}));
    std::vector<KZ> dz;
    for (const auto& c : d1.coeffs()) dz.emplace_back(c);
    KZ r = resultant(PT(std::move(dz)), PT(std::move(az)));
    TPoly q(TowerElem(1));
    for (long n : integer_roots(r, T)) {
        if (n <= 0) continue;
        TPoly g = gcd(s - dd1.scale(TowerElem(n)), d1);
        q = q * pow(g, static_cast<int>(n));
    }
    return TowerElem::poly(B, q);
}

TowerElem rde_denominator_bound(const TowerElem& u, const std::vector<TowerElem>& ws, const Tower& T) {
    const int B = T.base_level();
    TPoly dn = u.den_at(std::max(B, u.level()));
    if (u.level() < B) dn = TPoly(TowerElem(1));
    TPoly en(TowerElem(1));
    for (const auto& w : ws) {
        if (w.zero() || w.level() < B) continue;
        en = lcm(en, w.den_at(B));
    }
    TPoly p = gcd(dn, en);
    TPoly h = exact_div(gcd(en, en.derivative()), gcd(p, p.derivative()));
    return TowerElem::poly(B, h);
}

int rde_degree_bound(const TPoly& a, const TPoly& b, int dc) {
    const int da = a.degree();
    const int db = b.zero() ? -1 : b.degree();
    int n = std::max(0, dc - std::max(db, da - 1));
    if (!b.zero() && db == da - 1) {
        TowerElem alpha = -(b.lc() / a.lc());
        if (alpha.is_rational() && alpha.rat().is_integer() && alpha.rat().sign() >= 0 &&
            alpha.rat().num() < 100000)
            n = std::max(n, static_cast<int>(alpha.rat().num().get_si()));
    }
    return n;
}

ParamRdeResult param_rde(const TowerElem& u, const std::vector<TowerElem>& ws, int level, const Tower& T,
                         const RdeOptions& opt) {
    int top = u.level();
    for (const auto& w : ws) top = std::max(top, w.level());
    if (top > level) throw std::invalid_argument("param_rde: data above the requested level");
    const int B = T.base_level();
    if (level < B) return solve_ansatz({TowerElem(1)}, u, ws, T);
    if (level == B) return param_rde_base(u, ws, T);
    return param_rde_bounded(u, ws, level, T, opt);
}

RdeResult solve_rde(const RischDE& eq, const Tower& T, const RdeOptions& opt) {
    auto pr = param_rde(eq.u, {eq.w}, eq.level, T, opt);
    for (const auto& s : pr.solutions)
        if (!s.c[0].zero()) return {RdeStatus::Solved, s.y / s.c[0]};
    return {pr.complete ? RdeStatus::NoSolution : RdeStatus::NotFoundWithinBounds, TowerElem()};
}

// ---------------------------------------------------------------------------

const char* status_name(Status s) {
    switch (s) {
        case Status::Elementary: return "Elementary";
        case Status::NonElementary: return "NonElementary";
        case Status::NonElementaryWithinBounds: return "NonElementaryWithinBounds";
    }
    return "?";
}

SpecialReduction reduce_special(const TowerElem& f, int L, const Tower& T, const RdeOptions& opt) {
    SpecialReduction out;
    if (f.zero() || f.level() < L) return out;
    if (!T.is_exp_like(L)) throw std::invalid_argument("reduce_special: generator is not exponential");
    TPoly num = f.num_at(L), den = f.den_at(L);
    const int m = den.degree();
    if (!(den == TPoly::monomial(TowerElem(1), m))) throw std::invalid_argument("reduce_special: denominator not a power of t");
    TowerElem eta = T.log_deriv(L), t = TowerElem::generator(L);
    for (int k = 0; k < m; ++k) {
        TowerElem w = num.coeff(k);
        if (w.zero()) continue;
        int j = k - m;
        RischDE eq{TowerElem(j) * eta, w, L - 1};
        auto r = solve_rde(eq, T, opt);
        if (r.status != RdeStatus::Solved) {
            Certificate c;
            c.kind = Certificate::Kind::Rde;
            c.rde = eq;
            c.level = L - 1;
            c.bounded = r.status == RdeStatus::NotFoundWithinBounds;
            out.failure = c;
            return out;
        }
        out.g = out.g + r.y * t.pow(j);
    }
    return out;
}

PolynomialReduction reduce_polynomial(const TPoly& p, int L, const Tower& T, const RdeOptions& opt) {
    PolynomialReduction out;
    const TowerElem t = TowerElem::generator(L);
    if (L == T.base_level()) {
        for (int k = 0; k <= p.degree(); ++k) out.g = out.g + p.coeff(k) / TowerElem(k + 1) * t.pow(k + 1);
        return out;
    }
    if (T.is_exp_like(L)) {
        TowerElem eta = T.log_deriv(L);
        for (int j = 1; j <= p.degree(); ++j) {
            if (p.coeff(j).zero()) continue;
            RischDE eq{TowerElem(j) * eta, p.coeff(j), L - 1};
            auto r = solve_rde(eq, T, opt);
            if (r.status != RdeStatus::Solved) {
                Certificate c;
                c.kind = Certificate::Kind::Rde;
                c.rde = eq;
                c.level = L - 1;
                c.bounded = r.status == RdeStatus::NotFoundWithinBounds;
                out.failure = c;
                out.residual = TowerElem::poly(L, p) - derive(out.g, T);
                return out;
            }
            out.g = out.g + r.y * t.pow(j);
        }
        out.residual = p.coeff(0);
        return out;
    }
    // primitive: coefficient cascade from the top degree
    TowerElem Dt = T.gen(L).deriv;
    IntegrateOptions io;
    io.rde = opt;
    TowerElem rest = TowerElem::poly(L, p);
    for (int j = p.degree(); j >= 1; --j) {
        TowerElem a = rest.num_at(L).coeff(j);
        if (a.zero()) continue;
        auto basis = parametric_integrate_level({a, Dt}, L - 1, false, T, io);
        const ParametricEntry* hit = nullptr;
        for (const auto& e : basis.entries)
            if (!e.c[0].zero()) {
                hit = &e;
                break;
            }
        if (!hit) {
            Certificate c;
            c.kind = Certificate::Kind::LimitedIntegral;
            c.integrand = a;
            c.extra = Dt;
            c.level = L - 1;
            c.bounded = !basis.complete;
            out.failure = c;
            out.residual = rest;
            return out;
        }
        // a + e*Dt = D b  (scaled so the coefficient of a is one)
        TowerElem inv = hit->c[0].inverse();
        TowerElem e = hit->c[1] * inv, b = hit->elempart * inv;
        TowerElem q0 = -e / TowerElem(j + 1) * t.pow(j + 1) + b * t.pow(j);
        out.g = out.g + q0;
        rest = rest - derive(q0, T);
    }
    out.residual = rest;
    return out;
}

}  // namespace risch
