#include "risch/parametric.hpp"

#include <stdexcept>

namespace risch {

VerifyResult verify_relation(const RelationCertificate& cert, const std::vector<TowerElem>& fs,
                             const Tower& tower) {
    if (cert.c.size() != fs.size()) throw std::invalid_argument("verify_relation: size mismatch");
    TowerElem d;
    for (std::size_t i = 0; i < fs.size(); ++i) d = d + cert.c[i] * fs[i];
    d = d - derive(cert.g, tower);
    for (const auto& rs : cert.rootsums) d = d - rootsum_derivative(rs, tower);
    return {d.zero(), d};
}

std::vector<TowerElem> telescope_rhs(const TelescopeProblem& p, int order) {
    std::vector<TowerElem> r{TowerElem(1)};
    for (int i = 0; i < order; ++i) r.push_back(partial(r.back(), p.ylevel) + p.ldy * r.back());
    return r;
}

namespace {

// Clears denominators in the parameter and removes the content.
void normalize(TelescopeResult& res, int ylevel) {
    auto& c = res.coeffs;
    for (const auto& v : c)
        if (v.level() > ylevel) return;
    TPoly den(TowerElem(1));
    for (const auto& v : c) den = lcm(den, v.den_at(ylevel));
    TowerElem D = TowerElem::poly(ylevel, den);
    for (auto& v : c) v = v * D;
    res.certificate = res.certificate * D;
    TPoly g;
    for (const auto& v : c) g = gcd(g, v.num_at(ylevel));
    TowerElem G = TowerElem::poly(ylevel, monic(g));
    for (auto& v : c) v = v / G;
    res.certificate = res.certificate / G;
    // rational content
    bool rational = true;
    mpz_class l = 1, n = 0;
    for (const auto& v : c) {
        for (const auto& k : v.num_at(ylevel).coeffs()) {
            if (!k.is_rational()) {
                rational = false;
                break;
            }
            l = lcm(l, k.rat().raw().get_den());
            n = gcd(n, k.rat().raw().get_num());
        }
    }
    if (!rational || n == 0) return;
    Rat s(l, n);
    const TowerElem& top = c.back();
    if (top.num_at(ylevel).lc().rat().sign() < 0) s = -s;
    for (auto& v : c) v = v * TowerElem(s);
    res.certificate = res.certificate * TowerElem(s);
}

}  // namespace

std::optional<TelescopeResult> az_telescope_fixed(const TelescopeProblem& p, int order, const Tower& tower,
                                                  const RdeOptions& opt) {
    auto rs = telescope_rhs(p, order);
    auto pr = param_rde(p.ldx, rs, tower.base_level(), tower, opt);
    const std::size_t n = rs.size();
    // columns c_order..c_0, then the solution index
    Matrix<TowerElem> rows;
    for (std::size_t s = 0; s < pr.solutions.size(); ++s) {
        std::vector<TowerElem> row;
        for (std::size_t i = n; i-- > 0;) row.push_back(pr.solutions[s].c[i]);
        for (std::size_t q = 0; q < pr.solutions.size(); ++q) row.push_back(q == s ? TowerElem(1) : TowerElem());
        rows.push_back(std::move(row));
    }
    auto ech = echelon_on(std::move(rows), 0, n);
    if (ech.empty() || ech[0][0].zero()) return std::nullopt;
    TelescopeResult res;
    res.order = order;
    res.coeffs.assign(n, TowerElem());
    for (std::size_t q = 0; q < pr.solutions.size(); ++q) {
        const TowerElem& a = ech[0][n + q];
        if (a.zero()) continue;
        for (std::size_t i = 0; i < n; ++i) res.coeffs[i] = res.coeffs[i] + a * pr.solutions[q].c[i];
        res.certificate = res.certificate + a * pr.solutions[q].y;
    }
    normalize(res, p.ylevel);
    return res;
}

std::optional<TelescopeResult> az_telescope(const TelescopeProblem& p, int maxorder, const Tower& tower,
                                            const RdeOptions& opt) {
    for (int m = 0; m <= maxorder; ++m)
        if (auto r = az_telescope_fixed(p, m, tower, opt)) return r;
    return std::nullopt;
}

TowerElem telescope_defect(const TelescopeProblem& p, const TelescopeResult& r, const Tower& tower) {
    auto rs = telescope_rhs(p, r.order);
    TowerElem d = derive(r.certificate, tower) + p.ldx * r.certificate;
    for (std::size_t i = 0; i < rs.size() && i < r.coeffs.size(); ++i) d = d - r.coeffs[i] * rs[i];
    return d;
}

}  // namespace risch
