#include "risch/numeric.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

namespace risch::numeric {

Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
Real abs(const Complex& a) { return boost::multiprecision::sqrt(a.re * a.re + a.im * a.im); }
Complex exp(const Complex& a) {
    Real m = boost::multiprecision::exp(a.re);
    return {m * boost::multiprecision::cos(a.im), m * boost::multiprecision::sin(a.im)};
}
Complex log(const Complex& a) { return {boost::multiprecision::log(abs(a)), boost::multiprecision::atan2(a.im, a.re)}; }

void set_precision(int digits) { Real::default_precision(static_cast<unsigned>(digits)); }

namespace {

Complex cx(const Real& r) { return {r, Real(0)}; }
Complex from_rat(const Rat& q) {
    Real n(q.num().get_str()), d(q.den().get_str());
    return cx(n / d);
}

Complex horner(const std::vector<Complex>& c, const Complex& z) {
    Complex r = cx(Real(0));
    for (std::size_t k = c.size(); k-- > 0;) r = r * z + c[k];
    return r;
}

}  // namespace

std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    std::vector<Complex> c = coeffs;
    while (!c.empty() && abs(c.back()) == 0) c.pop_back();
    if (c.size() < 2) return {};
    const std::size_t n = c.size() - 1;
    Complex lc = c.back();
    for (auto& v : c) v = v / lc;
    // Durand-Kerner from points on a circle enclosing all roots
    Real bound(1);
    for (std::size_t k = 0; k < n; ++k) bound = std::max(bound, Real(1) + abs(c[k]));
    std::vector<Complex> z(n);
    Complex seed{Real("0.4"), Real("0.9")};
    Complex w = cx(Real(1));
    for (std::size_t k = 0; k < n; ++k) {
        w = w * seed;
        z[k] = w * cx(bound);
    }
    const Real eps = boost::multiprecision::pow(Real(10), -Real(Real::default_precision()) + 5);
    for (int it = 0; it < 2000; ++it) {
        Real delta(0);
        for (std::size_t i = 0; i < n; ++i) {
            Complex den = cx(Real(1));
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) den = den * (z[i] - z[j]);
            Complex step = horner(c, z[i]) / den;
            z[i] = z[i] - step;
            delta = std::max(delta, abs(step));
        }
        if (delta < eps) break;
    }
    return z;
}

namespace {

struct Poles {};

class Evaluator {
public:
    Evaluator(const front::TowerPlan& plan, std::vector<Complex> gens) : plan_(plan), gens_(std::move(gens)) {}

    Complex operator()(const TowerElem& e) const {
        if (e.is_rational()) return from_rat(e.rat());
        const int L = e.level();
        Complex n = poly(e.num_at(L), L), d = poly(e.den_at(L), L);
        if (abs(d) < tiny()) throw Poles{};
        return n / d;
    }

private:
    const front::TowerPlan& plan_;
    std::vector<Complex> gens_;

    static const Real& tiny() {
        static const Real t("1e-6");
        return t;
    }
    Complex poly(const TPoly& p, int L) const {
        Complex r = cx(Real(0));
        for (int k = p.degree(); k >= 0; --k) r = r * gens_[static_cast<std::size_t>(L)] + (*this)(p.coeff(k));
        return r;
    }
};

Complex eval_expr(const front::Expr& e, const std::map<std::string, Complex>& syms) {
    using K = front::Expr::Kind;
    switch (e.kind) {
        case K::Num: return from_rat(e.value);
        case K::Sym: return syms.at(e.name);
        case K::Add: return eval_expr(*e.args[0], syms) + eval_expr(*e.args[1], syms);
        case K::Sub: return eval_expr(*e.args[0], syms) - eval_expr(*e.args[1], syms);
        case K::Mul: return eval_expr(*e.args[0], syms) * eval_expr(*e.args[1], syms);
        case K::Div: return eval_expr(*e.args[0], syms) / eval_expr(*e.args[1], syms);
        case K::Neg: return cx(Real(0)) - eval_expr(*e.args[0], syms);
        case K::Pow: {
            Complex b = eval_expr(*e.args[0], syms), r = cx(Real(1));
            long n = e.exponent;
            for (long i = 0; i < (n < 0 ? -n : n); ++i) r = r * b;
            return n < 0 ? cx(Real(1)) / r : r;
        }
        case K::Exp: return exp(eval_expr(*e.args[0], syms));
        case K::Ln: return log(eval_expr(*e.args[0], syms));
    }
    return cx(Real(0));
}

// Generator values for given constants and base point.
std::vector<Complex> generator_values(const front::TowerPlan& plan, const std::vector<Complex>& consts,
                                      const Complex& x) {
    const Tower& T = plan.tower;
    std::vector<Complex> g(static_cast<std::size_t>(T.size()));
    for (int l = 0; l < T.size(); ++l) {
        const auto& gen = T.gen(l);
        std::vector<Complex> prefix(g.begin(), g.begin() + l);
        Evaluator ev(plan, prefix);
        switch (gen.kind) {
            case GenKind::Constant: g[static_cast<std::size_t>(l)] = consts[static_cast<std::size_t>(l)]; break;
            case GenKind::BaseVar: g[static_cast<std::size_t>(l)] = x; break;
            case GenKind::Exp: g[static_cast<std::size_t>(l)] = exp(ev(gen.arg)); break;
            case GenKind::Log: g[static_cast<std::size_t>(l)] = log(ev(gen.arg)); break;
            default: throw std::invalid_argument("numeric check: unsupported generator kind");
        }
    }
    return g;
}

std::string show(const Real& r, int digits = 8) {
    std::ostringstream os;
    os.precision(digits);
    os << r;
    return os.str();
}

}  // namespace

Report check_antiderivative(const TowerElem& f, const TowerElem& elempart, const std::vector<RootSum>& rootsums,
                            const TowerElem& residual, const front::TowerPlan& plan, const Options& opt) {
    const int wp = opt.digits + 15;
    set_precision(wp);
    const Tower& T = plan.tower;
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<long> pick(1, 999999);
    Report rep;
    const Real threshold = boost::multiprecision::pow(Real(10), -Real(opt.digits) / 2);
    const Real h = boost::multiprecision::pow(Real(10), -Real(wp) / 3);
    Real maxr(0);
    int attempts = 0;
    while (static_cast<int>(rep.samples.size()) < opt.samples) {
        if (++attempts > 100 * opt.samples + 1000) throw std::runtime_error("numeric check: no pole-free sample points");
        // constants: free parameters random in (1,2), defined ones evaluated
        std::vector<Complex> consts(static_cast<std::size_t>(T.size()), cx(Real(0)));
        std::map<std::string, Complex> syms;
        for (const auto& c : plan.constants) {
            int l = plan.symbol_levels.at(c.name);
            Complex v = c.definition ? eval_expr(*c.definition, syms)
                                     : cx(Real(1) + Real(pick(rng)) / Real(1000000));
            consts[static_cast<std::size_t>(l)] = v;
            syms[c.name] = v;
        }
        const Rat xq(1000000 + pick(rng), 1000000);
        const Complex x = from_rat(xq);
        try {
            auto g0 = generator_values(plan, consts, x);
            auto gp = generator_values(plan, consts, x + cx(h));
            auto gm = generator_values(plan, consts, x - cx(h));
            Evaluator e0(plan, g0), ep(plan, gp), em(plan, gm);
            Complex fx = e0(f);
            Complex d = (ep(elempart) - em(elempart)) / cx(2 * h);
            for (const auto& rs : rootsums) {
                std::vector<Complex> qc;
                for (const auto& c : rs.rpoly.coeffs()) qc.push_back(e0(c));
                for (const auto& z0 : poly_roots(qc)) {
                    std::vector<Complex> cp, cm;
                    for (const auto& c : rs.logand.coeffs()) {
                        cp.push_back(ep(c));
                        cm.push_back(em(c));
                    }
                    Complex sp = horner(cp, z0), sm = horner(cm, z0);
                    if (abs(sp) < Real("1e-6") || abs(sm) < Real("1e-6")) throw Poles{};
                    d = d + z0 * log(sp / sm) / cx(2 * h);
                }
            }
            d = d + e0(residual);
            Real r = abs(d - fx) / std::max(Real(1), abs(fx));
            maxr = std::max(maxr, r);
            rep.samples.push_back({xq.str(), show(r)});
        } catch (const Poles&) {
            continue;
        }
    }
    rep.max_residual = show(maxr);
    rep.threshold = show(threshold);
    rep.pass = maxr < threshold;
    return rep;
}

}  // namespace risch::numeric
