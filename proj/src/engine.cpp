#include "engine.hpp"

#include <algorithm>
#include <stdexcept>

namespace risch::detail {

namespace {

using Params = std::vector<EngineParam>;
using Vec = std::vector<TowerElem>;

TowerElem dot(const Vec& a, const Vec& b) {
    TowerElem s;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        if (!a[i].zero() && !b[i].zero()) s = s + a[i] * b[i];
    return s;
}

Vec unit(std::size_t n, std::size_t i) {
    Vec v(n);
    v[i] = TowerElem(1);
    return v;
}

// New parameters sum_j v[j] * s[j] for every v in V.
Params combine(const Params& s, const std::vector<Vec>& V) {
    Params out;
    for (const auto& v : V) {
        EngineParam p;
        p.c.assign(s.empty() ? 0 : s[0].c.size(), TowerElem());
        for (std::size_t j = 0; j < s.size() && j < v.size(); ++j) {
            const TowerElem& a = v[j];
            if (a.zero()) continue;
            for (std::size_t i = 0; i < p.c.size(); ++i) p.c[i] = p.c[i] + a * s[j].c[i];
            p.g = p.g + a * s[j].g;
            p.part = p.part + a * s[j].part;
            for (const auto& rs : s[j].logs) p.logs.push_back(a.is_one() ? rs : scale_rootsum(rs, a));
        }
        out.push_back(std::move(p));
    }
    return out;
}

// Laurent coefficients of an element of K[t, 1/t].
std::vector<std::pair<int, TowerElem>> laurent(const TowerElem& g, int L) {
    std::vector<std::pair<int, TowerElem>> out;
    if (g.zero()) return out;
    TPoly num = g.num_at(L), den = g.den_at(L);
    const int m = den.degree();
    if (!(den == TPoly::monomial(TowerElem(1), m)))
        throw std::logic_error("engine: expected a Laurent polynomial in an exponential generator");
    for (int k = 0; k <= num.degree(); ++k)
        if (!num.coeff(k).zero()) out.push_back({k - m, num.coeff(k)});
    return out;
}

TowerElem laurent_coeff(const TowerElem& g, int L, int j) {
    for (const auto& [k, c] : laurent(g, L))
        if (k == j) return c;
    return TowerElem();
}

class Engine {
public:
    Engine(const Tower& T, const IntegrateOptions& opt, EngineLog* log) : T_(T), opt_(opt), log_(log) {}

    bool complete = true;

    Params run(Params s, int L, bool logs, const Vec& req, int depth);

private:
    const Tower& T_;
    const IntegrateOptions& opt_;
    EngineLog* log_;

    bool alive(const Params& s, const Vec& req) const {
        if (req.empty()) return false;
        for (const auto& p : s)
            if (!dot(req, p.c).zero()) return true;
        return false;
    }
    const EngineParam* first_alive(const Params& s, const Vec& req) const {
        for (const auto& p : s)
            if (!dot(req, p.c).zero()) return &p;
        return nullptr;
    }
    template <class MakeCert>
    void update(Params& s, Params next, const Vec& req, int depth, MakeCert&& make) {
        if (log_ && alive(s, req) && !alive(next, req)) {
            if (!log_->cert) log_->cert = make(*first_alive(s, req));
            if (depth == 0 && !log_->snapshot) log_->snapshot = *first_alive(s, req);
        }
        s = std::move(next);
    }

    // Runs the next level down on integrands gs[k] (one per parameter) plus extras,
    // and returns the child parameters reduced to independent upper coordinates.
    Params descend(const Params& s, const Vec& gs, const Vec& extras, int L, bool logs, const Vec& req,
                   int depth);
};

Params Engine::descend(const Params& s, const Vec& gs, const Vec& extras, int L, bool logs, const Vec& req,
                       int depth) {
    const std::size_t k = s.size(), n = k + extras.size();
    Params child;
    for (std::size_t i = 0; i < n; ++i) {
        EngineParam p;
        p.c = unit(n, i);
        p.g = i < k ? gs[i] : extras[i - k];
        child.push_back(std::move(p));
    }
    Vec creq(n);
    for (std::size_t i = 0; i < k; ++i) creq[i] = dot(req, s[i].c);
    Params res = run(std::move(child), L, logs, creq, depth + 1);
    // independent projections onto the first k coordinates, carrying transforms
    Matrix<TowerElem> rows;
    for (std::size_t r = 0; r < res.size(); ++r) {
        Vec row(res[r].c.begin(), res[r].c.begin() + static_cast<std::ptrdiff_t>(k));
        for (std::size_t q = 0; q < res.size(); ++q) row.push_back(q == r ? TowerElem(1) : TowerElem());
        rows.push_back(std::move(row));
    }
    auto ech = echelon_on(std::move(rows), 0, k);
    std::vector<Vec> transforms;
    for (const auto& row : ech) transforms.emplace_back(row.begin() + static_cast<std::ptrdiff_t>(k), row.end());
    return combine(res, transforms);
}

Params Engine::run(Params s, int L, bool logs, const Vec& req, int depth) {
    if (s.empty()) return s;
    const int B = T_.base_level();
    if (L < B) {
        TowerElem x = TowerElem::generator(B);
        for (auto& p : s) {
            p.part = p.part + p.g * x;
            p.g = TowerElem();
        }
        return s;
    }
    const TowerElem t = TowerElem::generator(L);
    const std::size_t k = s.size();

    // Hermite reduction of the normal parts
    std::vector<TPoly> rems(k);
    TPoly Dstar(TowerElem(1));
    std::vector<TPoly> remden(k);
    for (std::size_t j = 0; j < k; ++j) {
        auto cs = canonical_split(s[j].g, L, T_);
        TowerElem rp;
        TFrac rem;
        if (!cs.normalpart.zero()) {
            auto hr = hermite_reduce(cs.normalpart, L, T_, opt_.hermite);
            rp = hr.rationalpart;
            rem = hr.remainder;
        }
        TowerElem pol = TowerElem::poly(L, cs.polypart) + TowerElem::fraction(L, cs.specialpart);
        TowerElem remel = TowerElem::fraction(L, rem);
        if (log_ && j == 0 && !cs.normalpart.zero())
            log_->trace.hermite.push_back({L, rp, remel + TowerElem::poly(L, cs.polypart)});
        s[j].part = s[j].part + rp;
        s[j].g = pol + remel;
        rems[j] = rem.num();
        remden[j] = rem.den();
        Dstar = lcm(Dstar, rem.den());
    }

    // residues
    if (Dstar.degree() > 0) {
        for (std::size_t j = 0; j < k; ++j)
            if (!rems[j].zero()) rems[j] = rems[j] * exact_div(Dstar, remden[j]);
        Vec row;
        for (std::size_t j = 0; j < k; ++j) {
            TPoly r = logs ? residue_variation(rems[j], Dstar, L, T_) : rems[j];
            row.push_back(TowerElem::poly(L, r));
        }
        auto ker = constant_kernel({row}, k, T_);
        if (ker.size() < k) {
            Params next = combine(s, ker);
            auto ind = [&](const EngineParam& p) {
                for (std::size_t j = 0; j < k; ++j)
                    if (&s[j] == &p) return j;
                return std::size_t(0);
            };
            update(s, std::move(next), req, depth, [&](const EngineParam& p) {
                Certificate c;
                std::size_t j = ind(p);
                c.level = L;
                if (logs) {
                    c.kind = Certificate::Kind::Residue;
                    auto rr = residues_logpart(TFrac(rems[j], Dstar), L, T_);
                    if (rr.obstruction) c.witness = *rr.obstruction;
                } else {
                    c.kind = Certificate::Kind::LimitedIntegral;
                    c.integrand = p.g;
                    c.allow_logs = false;
                }
                return c;
            });
            std::vector<TPoly> nr;
            for (const auto& v : ker) {
                TPoly a;
                for (std::size_t j = 0; j < k; ++j)
                    if (!v[j].zero()) a = a + rems[j].scale(v[j]);
                nr.push_back(std::move(a));
            }
            rems = std::move(nr);
        }
        if (logs) {
            for (std::size_t j = 0; j < s.size(); ++j) {
                if (rems[j].zero()) continue;
                auto rr = residues_logpart(TFrac(rems[j], Dstar), L, T_);
                if (rr.obstruction) throw std::logic_error("engine: residues not constant after constraint");
                if (log_ && j == 0) log_->trace.residues.push_back({L, rr.resultant, rr.rootsums});
                for (auto& rs : rr.rootsums) {
                    s[j].g = s[j].g - rootsum_derivative(rs, T_);
                    s[j].logs.push_back(std::move(rs));
                }
            }
        }
        if (s.empty()) return s;
    }

    // polynomial and special parts
    if (L == B) {
        for (auto& p : s) {
            TPoly q = p.g.num_at(L);
            if (p.g.den_at(L).degree() != 0) throw std::logic_error("engine: rational remainder at the base level");
            TowerElem I;
            for (int e = 0; e <= q.degree(); ++e) I = I + q.coeff(e) / TowerElem(e + 1) * t.pow(e + 1);
            p.part = p.part + I;
            p.g = TowerElem();
        }
        return s;
    }

    if (T_.is_exp_like(L)) {
        const TowerElem eta = T_.log_deriv(L);
        for (;;) {
            int j = 0;
            for (const auto& p : s)
                for (const auto& [e, c] : laurent(p.g, L))
                    if (e != 0 && (j == 0 || std::abs(e) > std::abs(j))) j = e;
            if (j == 0) break;
            Vec ws;
            for (const auto& p : s) ws.push_back(laurent_coeff(p.g, L, j));
            TowerElem u = TowerElem(j) * eta;
            auto pr = param_rde(u, ws, L - 1, T_, opt_.rde);
            if (!pr.complete) complete = false;
            std::vector<Vec> V;
            for (const auto& sol : pr.solutions) V.push_back(sol.c);
            Params next = combine(s, V);
            TowerElem tj = t.pow(j);
            for (std::size_t i = 0; i < next.size(); ++i) {
                TowerElem wj = laurent_coeff(next[i].g, L, j);
                next[i].part = next[i].part + pr.solutions[i].y * tj;
                next[i].g = next[i].g - wj * tj;
            }
            update(s, std::move(next), req, depth, [&](const EngineParam& p) {
                Certificate c;
                c.kind = Certificate::Kind::Rde;
                c.rde = {u, laurent_coeff(p.g, L, j), L - 1};
                c.level = L - 1;
                c.bounded = !pr.complete;
                return c;
            });
            if (s.empty()) return s;
        }
        Vec gs;
        for (const auto& p : s) gs.push_back(p.g);
        Vec extras;
        if (logs && T_.gen(L).kind == GenKind::HyperExp) extras.push_back(eta);
        Params res = descend(s, gs, extras, L - 1, logs, req, depth);
        Params next;
        for (const auto& cp : res) {
            Vec lam(cp.c.begin(), cp.c.begin() + static_cast<std::ptrdiff_t>(s.size()));
            EngineParam p = combine(s, {lam})[0];
            p.part = p.part + cp.part;
            p.logs.insert(p.logs.end(), cp.logs.begin(), cp.logs.end());
            if (cp.c.size() > s.size() && !cp.c.back().zero()) {
                // e*eta integrated as -e*log(t)
                const TowerElem& e = cp.c.back();
                p.logs.push_back({ZPoly(Vec{e, TowerElem(1)}), ZPoly(Vec{t}), L});
            }
            p.g = TowerElem();
            next.push_back(std::move(p));
        }
        update(s, std::move(next), req, depth, [&](const EngineParam& p) {
            Certificate c;
            c.kind = Certificate::Kind::LimitedIntegral;
            c.integrand = p.g;
            if (!extras.empty()) c.extra = eta;
            c.allow_logs = logs;
            c.level = L - 1;
            c.bounded = !complete;
            return c;
        });
        return s;
    }

    // primitive generator: coefficient cascade
    const TowerElem Dt = T_.gen(L).deriv;
    int m = 0;
    for (const auto& p : s) {
        if (p.g.den_at(L).degree() != 0) throw std::logic_error("engine: expected a polynomial in a primitive");
        m = std::max(m, p.g.num_at(L).degree());
    }
    for (int j = m; j >= 1; --j) {
        Vec gs;
        bool any = false;
        for (const auto& p : s) {
            gs.push_back(p.g.num_at(L).coeff(j));
            any = any || !gs.back().zero();
        }
        if (!any) continue;
        Params res = descend(s, gs, {Dt}, L - 1, false, req, depth);
        Params next;
        for (const auto& cp : res) {
            Vec lam(cp.c.begin(), cp.c.begin() + static_cast<std::ptrdiff_t>(s.size()));
            EngineParam p = combine(s, {lam})[0];
            TowerElem e = cp.c.back();
            TowerElem q0 = -e / TowerElem(j + 1) * t.pow(j + 1) + cp.part * t.pow(j);
            p.part = p.part + q0;
            p.g = p.g - derive(q0, T_);
            next.push_back(std::move(p));
        }
        const int jj = j;
        update(s, std::move(next), req, depth, [&](const EngineParam& p) {
            Certificate c;
            c.kind = Certificate::Kind::LimitedIntegral;
            c.integrand = p.g.num_at(L).coeff(jj);
            c.extra = Dt;
            c.level = L - 1;
            c.bounded = !complete;
            return c;
        });
        if (s.empty()) return s;
    }
    Vec gs;
    for (const auto& p : s) gs.push_back(p.g);
    Params res = descend(s, gs, {Dt}, L - 1, logs, req, depth);
    Params next;
    for (const auto& cp : res) {
        Vec lam(cp.c.begin(), cp.c.begin() + static_cast<std::ptrdiff_t>(s.size()));
        EngineParam p = combine(s, {lam})[0];
        p.part = p.part + cp.part - cp.c.back() * t;
        p.logs.insert(p.logs.end(), cp.logs.begin(), cp.logs.end());
        p.g = TowerElem();
        next.push_back(std::move(p));
    }
    update(s, std::move(next), req, depth, [&](const EngineParam& p) {
        Certificate c;
        c.kind = Certificate::Kind::LimitedIntegral;
        c.integrand = p.g;
        c.extra = Dt;
        c.allow_logs = logs;
        c.level = L - 1;
        c.bounded = !complete;
        return c;
    });
    return s;
}

}  // namespace

EngineResult run_engine(const std::vector<TowerElem>& fs, int level, bool allow_logs, const Tower& tower,
                        const IntegrateOptions& opt, EngineLog* log) {
    Params s;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        EngineParam p;
        p.c = unit(fs.size(), i);
        p.g = fs[i];
        s.push_back(std::move(p));
    }
    Vec req;
    if (log) req = unit(fs.size(), 0);
    Engine eng(tower, opt, log);
    EngineResult out;
    out.params = eng.run(std::move(s), level, allow_logs, req, 0);
    out.complete = eng.complete;
    return out;
}

}  // namespace risch::detail

namespace risch {

namespace {

int start_level(const std::vector<TowerElem>& fs, const Tower& tower) {
    int L = tower.base_level();
    for (const auto& f : fs) L = std::max(L, f.level());
    return L;
}

ParametricBasis to_basis(detail::EngineResult r) {
    ParametricBasis b;
    b.complete = r.complete;
    for (auto& p : r.params) b.entries.push_back({std::move(p.c), std::move(p.part), std::move(p.logs)});
    return b;
}

std::vector<RootSum> scaled(const std::vector<RootSum>& v, const TowerElem& lambda) {
    std::vector<RootSum> out;
    for (const auto& rs : v) out.push_back(lambda.is_one() ? rs : scale_rootsum(rs, lambda));
    return out;
}

}  // namespace

ParametricBasis parametric_integrate(const std::vector<TowerElem>& fs, const Tower& tower,
                                     const IntegrateOptions& opt) {
    return to_basis(detail::run_engine(fs, start_level(fs, tower), true, tower, opt, nullptr));
}

ParametricBasis parametric_integrate_level(const std::vector<TowerElem>& fs, int level, bool allow_logs,
                                           const Tower& tower, const IntegrateOptions& opt) {
    return to_basis(detail::run_engine(fs, level, allow_logs, tower, opt, nullptr));
}

IntegrationOutcome integrate(const TowerElem& f, const Tower& tower, const IntegrateOptions& opt) {
    IntegrationOutcome out;
    if (f.zero()) return out;
    detail::EngineLog log;
    auto res = detail::run_engine({f}, start_level({f}, tower), true, tower, opt, &log);
    out.trace = std::move(log.trace);
    for (const auto& p : res.params) {
        if (p.c[0].zero()) continue;
        TowerElem inv = p.c[0].inverse();
        out.status = Status::Elementary;
        out.elempart = p.part * inv;
        out.rootsums = scaled(p.logs, inv);
        return out;
    }
    out.certificate = log.cert;
    bool bounded = !res.complete || (log.cert && log.cert->bounded);
    out.status = bounded ? Status::NonElementaryWithinBounds : Status::NonElementary;
    if (log.snapshot) {
        TowerElem inv = log.snapshot->c[0].inverse();
        out.elempart = log.snapshot->part * inv;
        out.rootsums = scaled(log.snapshot->logs, inv);
        out.residual = log.snapshot->g * inv;
    } else {
        out.residual = f;
    }
    return out;
}

bool replay_certificate(const Certificate& cert, const Tower& tower, const RdeOptions& opt) {
    switch (cert.kind) {
        case Certificate::Kind::Rde:
            return solve_rde(cert.rde, tower, opt).status != RdeStatus::Solved;
        case Certificate::Kind::Residue:
            return cert.witness.degree() > 0 && !has_constant_coeffs(monic(cert.witness), tower);
        case Certificate::Kind::LimitedIntegral: {
            std::vector<TowerElem> fs{cert.integrand};
            if (!cert.extra.zero()) fs.push_back(cert.extra);
            IntegrateOptions io;
            io.rde = opt;
            auto b = parametric_integrate_level(fs, cert.level, cert.allow_logs, tower, io);
            for (const auto& e : b.entries)
                if (!e.c[0].zero()) return false;
            return true;
        }
    }
    return false;
}

}  // namespace risch
