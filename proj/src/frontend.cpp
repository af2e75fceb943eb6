#include "risch/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace risch::front {

ExprPtr num(Rat v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Num;
    e->value = std::move(v);
    return e;
}

ExprPtr sym(std::string name) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Sym;
    e->name = std::move(name);
    return e;
}

ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = std::move(args);
    return e;
}

ExprPtr power(ExprPtr base, long ex) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Pow;
    e->exponent = ex;
    e->args = {std::move(base)};
    return e;
}

ParseError::ParseError(const std::string& msg, std::size_t p)
    : std::runtime_error(msg + " at position " + std::to_string(p)), pos(p) {}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip();
        if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
        return e;
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;

    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) {
            if (i_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", i_);
            throw ParseError(std::string("expected '") + c + "'", i_);
        }
    }

    ExprPtr expr() {
        ExprPtr l = term();
        for (;;) {
            if (eat('+')) l = node(Expr::Kind::Add, {l, term()});
            else if (eat('-')) l = node(Expr::Kind::Sub, {l, term()});
            else return l;
        }
    }
    ExprPtr term() {
        ExprPtr l = unary();
        for (;;) {
            if (eat('*')) l = node(Expr::Kind::Mul, {l, unary()});
            else if (eat('/')) l = node(Expr::Kind::Div, {l, unary()});
            else return l;
        }
    }
    ExprPtr unary() {
        if (eat('-')) return node(Expr::Kind::Neg, {unary()});
        if (eat('+')) return unary();
        return pow();
    }
    long exponent() {
        skip();
        const std::size_t at = i_;
        bool paren = eat('(');
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        skip();
        std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_ || (i_ < s_.size() && s_[i_] == '.') || (paren && !eat(')')))
            throw ParseError("exponent must be an integer literal; write f^g as exp(g*ln(f))", at);
        std::string digits = s_.substr(b, i_ - b);
        if (digits.size() > 9) throw ParseError("exponent too large", b);
        long v = std::stol(digits);
        return neg ? -v : v;
    }
    ExprPtr pow() {
        ExprPtr b = atom();
        while (eat('^')) b = power(b, exponent());
        return b;
    }
    ExprPtr atom() {
        skip();
        if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t b = i_;
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
            std::string id = s_.substr(b, i_ - b);
            skip();
            if (i_ < s_.size() && s_[i_] == '(') {
                Expr::Kind k;
                if (id == "exp") k = Expr::Kind::Exp;
                else if (id == "ln" || id == "log") k = Expr::Kind::Ln;
                else throw ParseError("unknown function '" + id + "' (only exp and ln are supported)", b);
                ++i_;
                ExprPtr a = expr();
                expect(')');
                return node(k, {a});
            }
            if (id == "exp" || id == "ln" || id == "log") throw ParseError("function '" + id + "' needs an argument", b);
            return sym(id);
        }
        if (eat('(')) {
            ExprPtr e = expr();
            expect(')');
            return e;
        }
        throw ParseError(std::string("unexpected '") + c + "'", i_);
    }
    ExprPtr number() {
        const std::size_t b = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::string ip = s_.substr(b, i_ - b), fp;
        if (i_ < s_.size() && s_[i_] == '.') {
            ++i_;
            std::size_t fb = i_;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
            fp = s_.substr(fb, i_ - fb);
            if (ip.empty() && fp.empty()) throw ParseError("malformed number", b);
        }
        mpz_class n(ip.empty() ? "0" : ip);
        if (fp.empty()) return num(Rat(n));
        mpz_class f(fp), d;
        mpz_ui_pow_ui(d.get_mpz_t(), 10, fp.size());
        Rat v(n * d + f, d);
        return node(Expr::Kind::Div, {num(Rat(v.num())), num(Rat(v.den()))});
    }
};

int prec(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        case Expr::Kind::Num:
            if (e.value.sign() < 0) return 3;
            return e.value.den() == 1 ? 5 : 2;
        default: return 5;
    }
}

std::string paren(const std::string& s, bool wrap) { return wrap ? "(" + s + ")" : s; }

}  // namespace

ExprPtr parse(const std::string& text) { return Parser(text).run(); }

std::string to_string(const Expr& e) {
    using K = Expr::Kind;
    auto sub = [](const ExprPtr& a, bool wrap) { return paren(to_string(*a), wrap); };
    switch (e.kind) {
        case K::Num: return e.value.str();
        case K::Sym: return e.name;
        case K::Add: return sub(e.args[0], false) + "+" + sub(e.args[1], prec(*e.args[1]) == 1 || prec(*e.args[1]) == 3);
        case K::Sub: return sub(e.args[0], false) + "-" + sub(e.args[1], prec(*e.args[1]) <= 3 && prec(*e.args[1]) != 2);
        case K::Mul: return sub(e.args[0], prec(*e.args[0]) < 2) + "*" + sub(e.args[1], prec(*e.args[1]) <= 3);
        case K::Div: return sub(e.args[0], prec(*e.args[0]) < 2) + "/" + sub(e.args[1], prec(*e.args[1]) <= 3);
        case K::Neg: return "-" + sub(e.args[0], prec(*e.args[0]) < 4);
        case K::Pow: {
            std::string x = e.exponent < 0 ? "(" + std::to_string(e.exponent) + ")" : std::to_string(e.exponent);
            return sub(e.args[0], prec(*e.args[0]) < 5) + "^" + x;
        }
        case K::Exp: return "exp(" + to_string(*e.args[0]) + ")";
        case K::Ln: return "ln(" + to_string(*e.args[0]) + ")";
    }
    return "";
}

std::string to_latex(const Expr& e) {
    using K = Expr::Kind;
    auto sub = [](const ExprPtr& a, bool wrap) {
        std::string s = to_latex(*a);
        return wrap ? "\\left(" + s + "\\right)" : s;
    };
    switch (e.kind) {
        case K::Num:
            if (e.value.den() == 1) return e.value.str();
            return std::string(e.value.sign() < 0 ? "-" : "") + "\\frac{" + Rat(mpz_class(abs(e.value.num()))).str() + "}{" +
                   Rat(e.value.den()).str() + "}";
        case K::Sym: return e.name.size() > 1 ? "\\mathrm{" + e.name + "}" : e.name;
        case K::Add: return sub(e.args[0], false) + " + " + sub(e.args[1], prec(*e.args[1]) == 1 || prec(*e.args[1]) == 3);
        case K::Sub: return sub(e.args[0], false) + " - " + sub(e.args[1], prec(*e.args[1]) == 1 || prec(*e.args[1]) == 3);
        case K::Mul: return sub(e.args[0], prec(*e.args[0]) < 2) + " \\cdot " + sub(e.args[1], prec(*e.args[1]) <= 3);
        case K::Div: return "\\frac{" + to_latex(*e.args[0]) + "}{" + to_latex(*e.args[1]) + "}";
        case K::Neg: return "-" + sub(e.args[0], prec(*e.args[0]) < 2);
        case K::Pow: {
            const Expr& b = *e.args[0];
            std::string bs = b.kind == K::Exp || prec(b) < 5 ? "\\left(" + to_latex(b) + "\\right)" : to_latex(b);
            return bs + "^{" + std::to_string(e.exponent) + "}";
        }
        case K::Exp: return "e^{" + to_latex(*e.args[0]) + "}";
        case K::Ln: return "\\ln\\left(" + to_latex(*e.args[0]) + "\\right)";
    }
    return "";
}

std::vector<std::string> symbols(const Expr& e) {
    std::vector<std::string> out;
    std::function<void(const Expr&)> walk = [&](const Expr& x) {
        if (x.kind == Expr::Kind::Sym && std::find(out.begin(), out.end(), x.name) == out.end())
            out.push_back(x.name);
        for (const auto& a : x.args) walk(*a);
    };
    walk(e);
    return out;
}

// ---------------------------------------------------------------------------
// Tower construction

namespace {

struct Restart {
    std::optional<ConstantDef> def;
    std::vector<ExprPtr> seeds;  // exponentials to adjoin first
};

TowerElem eval(const Expr& e, const TowerPlan& plan) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Num: return TowerElem(e.value);
        case K::Sym: {
            auto it = plan.symbol_levels.find(e.name);
            if (it == plan.symbol_levels.end()) throw BuildError("unknown symbol '" + e.name + "'");
            return TowerElem::generator(it->second);
        }
        case K::Add: return eval(*e.args[0], plan) + eval(*e.args[1], plan);
        case K::Sub: return eval(*e.args[0], plan) - eval(*e.args[1], plan);
        case K::Mul: return eval(*e.args[0], plan) * eval(*e.args[1], plan);
        case K::Div: {
            TowerElem d = eval(*e.args[1], plan);
            if (d.zero()) throw BuildError("division by zero in " + to_string(e));
            return eval(*e.args[0], plan) / d;
        }
        case K::Neg: return -eval(*e.args[0], plan);
        case K::Pow: {
            TowerElem b = eval(*e.args[0], plan);
            if (b.zero() && e.exponent < 0) throw BuildError("division by zero in " + to_string(e));
            if (e.exponent > 100000) throw BuildError("exponent too large");
            return b.pow(static_cast<int>(e.exponent));
        }
        case K::Exp:
        case K::Ln: {
            auto it = plan.embedding.find(to_string(e));
            if (it == plan.embedding.end()) throw BuildError("no tower element for " + to_string(e));
            return it->second;
        }
    }
    return TowerElem();
}

class Builder {
public:
    Builder(TowerPlan& plan) : plan_(plan) {}

    void process(const Expr& e) {
        for (const auto& a : e.args) process(*a);
        if (e.kind != Expr::Kind::Exp && e.kind != Expr::Kind::Ln) return;
        std::string key = to_string(e);
        if (plan_.embedding.count(key)) return;
        TowerElem a = eval(*e.args[0], plan_);
        plan_.embedding[key] = e.kind == Expr::Kind::Exp ? embed_exp(key, a, e) : embed_ln(key, a, e);
    }

private:
    TowerPlan& plan_;
    std::vector<int> exps_, logs_;

    const Tower& T() const { return plan_.tower; }

    TowerElem constant(const std::string& name, ExprPtr def) {
        for (std::size_t i = 0; i < plan_.constants.size(); ++i)
            if (plan_.constants[i].name == name) return TowerElem::generator(plan_.symbol_levels.at(name));
        throw Restart{ConstantDef{name, std::move(def)}, {}};
    }

    // Rational solutions of Dv = sum n_i * cands_i; empty if none.
    std::optional<std::vector<Rat>> combination(const TowerElem& Dv, const std::vector<TowerElem>& cands) {
        std::vector<TowerElem> row{Dv};
        for (const auto& c : cands) row.push_back(-c);
        auto eqs = linear_equations(row, -1);
        auto ker = nullspace(eqs, row.size());
        for (auto& v : ker) {
            if (v[0].zero()) continue;
            std::vector<Rat> out;
            for (std::size_t i = 1; i < v.size(); ++i) out.push_back((v[i] / v[0]).rat());
            return out;
        }
        return std::nullopt;
    }

    ExprPtr expr_of(const TowerElem& c) const { return parse(format(c, T())); }

    TowerElem embed_exp(const std::string& key, const TowerElem& a, const Expr& e) {
        if (T().is_constant(a)) {
            if (a.zero()) return TowerElem(1);
            return constant("exp(" + format(a, T()) + ")", node(Expr::Kind::Exp, {expr_of(a)}));
        }
        std::vector<TowerElem> cands;
        for (int l : exps_) cands.push_back(derive(T().gen(l).arg, T()));
        for (int l : logs_) cands.push_back(T().gen(l).deriv);
        if (auto n = combination(derive(a, T()), cands)) {
            // fractional exponents: restart with exp(a_i/q) adjoined first
            std::vector<ExprPtr> seeds;
            for (std::size_t i = 0; i < n->size(); ++i) {
                const Rat& k = (*n)[i];
                if (k.den() == 1) continue;
                if (i >= exps_.size())
                    throw BuildError(key + " is a fractional power of a logarithm argument (algebraic extension)");
                const TowerElem& ai = T().gen(exps_[i]).arg;
                seeds.push_back(node(Expr::Kind::Exp, {expr_of(ai / TowerElem(Rat(k.den())))}));
            }
            if (!seeds.empty()) throw Restart{std::nullopt, std::move(seeds)};
            TowerElem r(1), c = a;
            for (std::size_t i = 0; i < n->size(); ++i) {
                const Rat& k = (*n)[i];
                if (k.is_zero()) continue;
                const long p = k.num().get_si();
                if (i < exps_.size()) {
                    const int l = exps_[i];
                    r = r * TowerElem::generator(l).pow(static_cast<int>(p));
                    c = c - TowerElem(k) * T().gen(l).arg;
                } else {
                    const int l = logs_[i - exps_.size()];
                    r = r * T().gen(l).arg.pow(static_cast<int>(p));
                    c = c - TowerElem(k) * TowerElem::generator(l);
                }
            }
            if (!c.zero()) r = r * constant("exp(" + format(c, T()) + ")", node(Expr::Kind::Exp, {expr_of(c)}));
            return r;
        }
        int l = plan_.tower.add_exp(a, key);
        plan_.generator_defs[l] = std::make_shared<Expr>(e);
        exps_.push_back(l);
        return TowerElem::generator(l);
    }

    TowerElem embed_ln(const std::string& key, const TowerElem& u, const Expr& e) {
        if (u.zero()) throw BuildError("logarithm of zero in " + key);
        if (T().is_constant(u)) {
            if (u.is_one()) return TowerElem();
            return constant("ln(" + format(u, T()) + ")", node(Expr::Kind::Ln, {expr_of(u)}));
        }
        std::vector<TowerElem> cands;
        for (int l : logs_) cands.push_back(T().gen(l).deriv);
        for (int l : exps_) cands.push_back(derive(T().gen(l).arg, T()));
        if (auto n = combination(derive(u, T()) / u, cands)) {
            mpz_class N = 1;
            for (const auto& k : *n) N = lcm(N, k.den());
            TowerElem r, w = u.pow(static_cast<int>(N.get_si()));
            for (std::size_t i = 0; i < n->size(); ++i) {
                const Rat& k = (*n)[i];
                if (k.is_zero()) continue;
                const int p = static_cast<int>((k * Rat(N)).num().get_si());
                if (i < logs_.size()) {
                    const int l = logs_[i];
                    r = r + TowerElem(k) * TowerElem::generator(l);
                    w = w / T().gen(l).arg.pow(p);
                } else {
                    const int l = exps_[i - logs_.size()];
                    r = r + TowerElem(k) * T().gen(l).arg;
                    w = w / TowerElem::generator(l).pow(p);
                }
            }
            if (!w.is_one()) {
                TowerElem kappa = constant("ln(" + format(w, T()) + ")", node(Expr::Kind::Ln, {expr_of(w)}));
                r = r + kappa / TowerElem(Rat(N));
            }
            return r;
        }
        int l = plan_.tower.add_log(u, key);
        plan_.generator_defs[l] = std::make_shared<Expr>(e);
        logs_.push_back(l);
        return TowerElem::generator(l);
    }
};

}  // namespace

TowerPlan build_tower(const std::vector<ExprPtr>& es, const std::string& var, const std::vector<std::string>& params) {
    std::vector<ConstantDef> consts;
    auto add_sym = [&](const std::string& s) {
        if (s == var) return;
        for (const auto& c : consts)
            if (c.name == s) return;
        consts.push_back({s, nullptr});
    };
    for (const auto& p : params) add_sym(p);
    for (const auto& e : es)
        for (const auto& s : symbols(*e)) add_sym(s);
    std::vector<ExprPtr> seeds;
    for (int attempt = 0; attempt < 200; ++attempt) {
        TowerPlan plan;
        plan.var = var;
        plan.constants = consts;
        for (const auto& c : consts) plan.symbol_levels[c.name] = plan.tower.add_constant(c.name);
        plan.symbol_levels[var] = plan.tower.add_base(var);
        // definitions of constants are themselves embedded
        for (const auto& c : consts)
            if (c.definition) plan.embedding[to_string(*c.definition)] = TowerElem::generator(plan.symbol_levels[c.name]);
        Builder b(plan);
        try {
            for (const auto& e : seeds) b.process(*e);
            for (const auto& e : es) b.process(*e);
        } catch (Restart& r) {
            if (r.def) consts.push_back(std::move(*r.def));
            seeds.insert(seeds.begin(), r.seeds.begin(), r.seeds.end());
            continue;
        }
        return plan;
    }
    throw BuildError("tower construction did not settle (too many restarts)");
}

TowerElem to_tower_elem(const Expr& e, const TowerPlan& plan) { return eval(e, plan); }

ExprPtr to_expr(const TowerElem& e, const TowerPlan& plan) { return parse(format(e, plan.tower)); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string latex_of(const std::string& plain) { return to_latex(*parse(plain)); }


// Signed terms of an element: fractional parts first, polynomial part last.
void split_terms(const TowerElem& e, const Tower& T, std::vector<std::string>& fracs, std::vector<std::string>& polys) {
    if (e.zero()) return;
    const int L = e.level();
    if (L < T.base_level()) {
        polys.push_back(format(e, T));
        return;
    }
    auto cs = canonical_split(e, L, T);
    if (!cs.normalpart.num().zero()) fracs.push_back(format(TowerElem::fraction(L, cs.normalpart), T));
    if (!cs.specialpart.num().zero()) {
        const TPoly& sn = cs.specialpart.num();
        const TPoly& sd = cs.specialpart.den();
        const int m = sd.degree();
        if (T.is_exp_like(L) && sd == TPoly::monomial(TowerElem(1), m)) {
            TowerElem t = TowerElem::generator(L);
            for (int k = 0; k <= sn.degree(); ++k)
                if (!sn.coeff(k).zero()) fracs.push_back(format(sn.coeff(k) / t.pow(m - k), T));
        } else {
            fracs.push_back(format(TowerElem::fraction(L, cs.specialpart), T));
        }
    }
    const TPoly& p = cs.polypart;
    const TowerElem t = TowerElem::generator(L);
    for (int k = p.degree(); k >= 1; --k)
        if (!p.coeff(k).zero()) polys.push_back(format_poly(TPoly::monomial(p.coeff(k), k), format(t, T), T));
    if (!p.coeff(0).zero()) {
        std::vector<std::string> f2, p2;
        split_terms(p.coeff(0), T, f2, p2);
        fracs.insert(fracs.end(), f2.begin(), f2.end());
        polys.insert(polys.end(), p2.begin(), p2.end());
    }
}

// A signed plain term, or a term already in the target format.
struct Term {
    std::string text;
    bool raw = false;
};

std::vector<Term> plain_terms(const std::vector<std::string>& v) {
    std::vector<Term> out;
    for (const auto& s : v) out.push_back({s, false});
    return out;
}

std::string join(const std::vector<Term>& terms, Format f) {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string& s = terms[i].text;
        bool neg = !s.empty() && s[0] == '-';
        std::string body = neg ? s.substr(1) : s;
        if (f == Format::Latex && !terms[i].raw) body = latex_of(body);
        if (i == 0) out += (neg ? "-" : "") + body;
        else out += (neg ? " - " : " + ") + body;
    }
    return out;
}

// Lowest power of z first, so the logand reads like its t-polynomial.
std::string ascending(const ZPoly& p, const Tower& T) {
    std::string out;
    for (int k = 0; k <= p.degree(); ++k) {
        if (p.coeff(k).zero()) continue;
        std::string m = format_poly(ZPoly::monomial(p.coeff(k), k), "z", T);
        if (k > 0 && m.find_first_of("+-", 1) != std::string::npos && m.back() != 'z' &&
            m.find("*z") == std::string::npos)
            m = "(" + m + ")";
        if (!out.empty() && m[0] != '-') out += "+";
        out += m;
    }
    return out.empty() ? "0" : out;
}

std::string rootsum_sum_text(const RootSum& rs, const Tower& T, Format f) {
    std::string q = format_poly(rs.rpoly, "z", T), s = ascending(rs.logand, T);
    if (f == Format::Latex)
        return "\\sum_{" + latex_of(q) + "=0} z \\ln\\left(" + latex_of(s) + "\\right)";
    return "sum_{z: " + q + "=0} z*ln(" + s + ")";
}

std::vector<Term> rootsum_terms(const RootSum& rs, const Tower& T, Format f) {
    std::vector<Term> out;
    auto ex = expand_rational_roots(rs);
    for (const auto& [c, arg] : ex.logs) {
        std::string lg = "ln(" + format(arg, T) + ")";
        if (c.is_one()) out.push_back({lg});
        else if (c == TowerElem(-1)) out.push_back({"-" + lg});
        else {
            std::string cs = format(c, T);
            bool sum = cs.find_first_of("+-", 1) != std::string::npos;
            out.push_back({(sum ? "(" + cs + ")" : cs) + "*" + lg});
        }
    }
    if (ex.rest) out.push_back({rootsum_sum_text(*ex.rest, T, f), true});
    return out;
}

}  // namespace

std::string render(const TowerElem& e, const TowerPlan& plan, Format f) {
    std::vector<std::string> fr, po;
    split_terms(e, plan.tower, fr, po);
    fr.insert(fr.end(), po.begin(), po.end());
    return join(plain_terms(fr), f);
}

std::string render_rootsum(const RootSum& rs, const TowerPlan& plan, Format f) {
    return join(rootsum_terms(rs, plan.tower, f), f);
}

std::string render_antiderivative(const TowerElem& elempart, const std::vector<RootSum>& rootsums,
                                  const TowerPlan& plan, Format f) {
    std::vector<std::string> fr, po;
    split_terms(elempart, plan.tower, fr, po);
    std::vector<Term> terms = plain_terms(fr);
    for (const auto& rs : rootsums) {
        auto ts = rootsum_terms(rs, plan.tower, f);
        terms.insert(terms.end(), ts.begin(), ts.end());
    }
    auto pt = plain_terms(po);
    terms.insert(terms.end(), pt.begin(), pt.end());
    return join(terms, f);
}

namespace {
std::string field_name(int level, const Tower& T) {
    std::string s = "Q(";
    for (int l = 0; l <= level && l < T.size(); ++l) s += (l ? ", " : "") + T.gen(l).name;
    return s + ")";
}
}  // namespace

std::string render_certificate(const Certificate& c, const TowerPlan& plan) {
    const Tower& T = plan.tower;
    std::string s;
    switch (c.kind) {
        case Certificate::Kind::Rde:
            s = "Dy + (" + format(c.rde.u, T) + ")*y = " + format(c.rde.w, T) + " has no solution y in " +
                field_name(c.rde.level, T);
            break;
        case Certificate::Kind::Residue:
            s = "residues are the roots of " + format_poly(c.witness, "z", T) + ", which are not constant";
            break;
        case Certificate::Kind::LimitedIntegral:
            s = format(c.integrand, T);
            if (!c.extra.zero()) s += " + e*(" + format(c.extra, T) + ")";
            s += " has no integral in " + field_name(c.level, T) + (c.allow_logs ? " plus logarithms" : "");
            if (!c.extra.zero()) s += " for any constant e";
            break;
    }
    if (c.bounded) s += " (within search bounds)";
    return s;
}

HyperexpData hyperexp_logderivs(const ExprPtr& f, const TowerPlan& plan, const std::string& param) {
    const Tower& T = plan.tower;
    TowerElem fe = to_tower_elem(*f, plan);
    if (fe.zero()) throw BuildError("zero integrand");
    HyperexpData out;
    out.ldx = derive(fe, T) / fe;
    if (out.ldx.level() > T.base_level())
        throw BuildError("integrand is not hyperexponential in " + plan.var);
    // the same expression over a tower with the parameter as base variable
    std::vector<std::string> ps{plan.var};
    for (const auto& c : plan.constants)
        if (!c.definition && c.name != param) ps.push_back(c.name);
    TowerPlan yp = build_tower({f}, param, ps);
    TowerElem fy = to_tower_elem(*f, yp);
    TowerElem ldy = derive(fy, yp.tower) / fy;
    if (ldy.level() > yp.tower.base_level())
        throw BuildError("integrand is not hyperexponential in " + param);
    out.ldy = to_tower_elem(*parse(format(ldy, yp.tower)), plan);
    return out;
}

}  // namespace risch::front
