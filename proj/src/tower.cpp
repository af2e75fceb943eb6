#include "risch/tower.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace risch {

struct TowerElem::Node {
    TPoly num;
    TPoly den;
};

const Rat& TowerElem::rat() const {
    if (level_ >= 0) throw std::logic_error("TowerElem::rat on non-rational element");
    return q_;
}

TowerElem TowerElem::make(int level, TPoly num, TPoly den) {
    if (num.zero()) return TowerElem();
    if (num.degree() == 0 && den.degree() == 0) return num.coeff(0);
    TowerElem e;
    e.level_ = level;
    e.node_ = std::make_shared<const Node>(Node{std::move(num), std::move(den)});
    return e;
}

TowerElem TowerElem::generator(int level) {
    if (level < 0) throw std::invalid_argument("generator level must be nonnegative");
    return make(level, TPoly::var(), TPoly(TowerElem(1L)));
}

TowerElem TowerElem::poly(int level, TPoly p) { return make(level, std::move(p), TPoly(TowerElem(1L))); }

TowerElem TowerElem::fraction(int level, TPoly num, TPoly den) {
    if (den.zero()) throw std::domain_error("division by the zero element");
    if (num.zero()) return TowerElem();
    if (den.degree() > 0) {
        TPoly g = gcd(num, den);
        if (g.degree() > 0) {
            num = exact_div(num, g);
            den = exact_div(den, g);
        }
    }
    if (!den.lc().is_one()) {
        TowerElem inv = den.lc().inverse();
        num = num.scale(inv);
        den = den.scale(inv);
    }
    return make(level, std::move(num), std::move(den));
}

namespace {

// t_k -> point(k); nothing when a denominator vanishes there
std::optional<Rat> specialize(const TowerElem& e) {
    if (e.is_rational()) return e.rat();
    const int L = e.level();
    const Rat pt(1009 + 37 * L, 97 + 11 * L);
    auto horner = [&](const TPoly& p) -> std::optional<Rat> {
        Rat acc(0);
        for (int i = p.degree(); i >= 0; --i) {
            auto c = specialize(p.coeff(i));
            if (!c) return std::nullopt;
            acc = acc * pt + *c;
        }
        return acc;
    };
    auto n = horner(e.num_at(L));
    auto d = horner(e.den_at(L));
    if (!n || !d || d->is_zero()) return std::nullopt;
    return *n / *d;
}

std::optional<Poly<Rat>> specialize(const TPoly& p) {
    std::vector<Rat> c;
    for (const auto& e : p.coeffs()) {
        auto v = specialize(e);
        if (!v) return std::nullopt;
        c.push_back(*v);
    }
    return Poly<Rat>(std::move(c));
}

// gcd(a, b) = 1 is certain when the specialized gcd is constant and the
// specialization keeps the degree of a
bool surely_coprime(const TPoly& a, const TPoly& b) {
    auto sa = specialize(a);
    if (!sa || sa->degree() != a.degree()) return false;
    auto sb = specialize(b);
    if (!sb) return false;
    return gcd(*sa, *sb).degree() == 0;
}

}  // namespace

template <>
TPoly gcd<TowerElem>(TPoly a, TPoly b) {
    if (a.zero() || b.zero()) return monic(a.zero() ? b : a);
    if (a.degree() == 0 || b.degree() == 0) return TPoly(TowerElem(1L));
    auto order = [](const TPoly& p) {
        int k = 0;
        while (is_zero(p.coeff(k))) ++k;
        return k;
    };
    // c*t^k against anything
    if (order(a) == a.degree() || order(b) == b.degree())
        return TPoly::monomial(TowerElem(1L), std::min(order(a), order(b)));
    if (surely_coprime(a, b) || surely_coprime(b, a)) return TPoly(TowerElem(1L));
    a = monic(a);
    b = monic(b);
    while (!b.zero()) {
        TPoly r = monic(divmod(a, b).rem);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

TPoly TowerElem::num_at(int L) const {
    if (level_ > L) throw std::logic_error("num_at below the element's level");
    if (level_ < L) return TPoly(*this);
    return node_->num;
}

TPoly TowerElem::den_at(int L) const {
    if (level_ > L) throw std::logic_error("den_at below the element's level");
    if (level_ < L) return TPoly(TowerElem(1L));
    return node_->den;
}

TowerElem TowerElem::operator-() const {
    if (level_ < 0) return TowerElem(-q_);
    return make(level_, -node_->num, node_->den);
}

TowerElem operator+(const TowerElem& a, const TowerElem& b) {
    if (a.level_ < 0 && b.level_ < 0) return TowerElem(a.q_ + b.q_);
    if (a.zero()) return b;
    if (b.zero()) return a;
    if (a.level_ != b.level_) {
        const TowerElem& hi = a.level_ > b.level_ ? a : b;
        const TowerElem& lo = a.level_ > b.level_ ? b : a;
        const auto& n = hi.node_->num;
        const auto& d = hi.node_->den;
        return TowerElem::make(hi.level_, n + d.scale(lo), d);
    }
    const int L = a.level_;
    const auto& [n1, d1] = *a.node_;
    const auto& [n2, d2] = *b.node_;
    if (d1.degree() == 0 && d2.degree() == 0) return TowerElem::make(L, n1 + n2, d1);
    if (d1 == d2) return TowerElem::fraction(L, n1 + n2, d1);
    // reduced inputs: only common factors of the denominators can cancel
    TPoly g = gcd(d1, d2);
    if (g.degree() == 0) return TowerElem::make(L, n1 * d2 + n2 * d1, d1 * d2);
    TPoly c1 = exact_div(d1, g), c2 = exact_div(d2, g);
    TPoly num = n1 * c2 + n2 * c1;
    if (num.zero()) return TowerElem();
    TPoly h = gcd(num, g);
    if (h.degree() == 0) return TowerElem::make(L, std::move(num), d1 * c2);
    return TowerElem::make(L, exact_div(num, h), c1 * c2 * exact_div(g, h));
}

TowerElem operator-(const TowerElem& a, const TowerElem& b) { return a + (-b); }

TowerElem operator*(const TowerElem& a, const TowerElem& b) {
    if (a.level_ < 0 && b.level_ < 0) return TowerElem(a.q_ * b.q_);
    if (a.zero() || b.zero()) return TowerElem();
    if (a.level_ != b.level_) {
        const TowerElem& hi = a.level_ > b.level_ ? a : b;
        const TowerElem& lo = a.level_ > b.level_ ? b : a;
        return TowerElem::make(hi.level_, hi.node_->num.scale(lo), hi.node_->den);
    }
    const int L = a.level_;
    const auto& [n1, d1] = *a.node_;
    const auto& [n2, d2] = *b.node_;
    if (d1.degree() == 0 && d2.degree() == 0) return TowerElem::make(L, n1 * n2, d1);
    TPoly g1 = d2.degree() > 0 ? gcd(n1, d2) : TPoly(TowerElem(1L));
    TPoly g2 = d1.degree() > 0 ? gcd(n2, d1) : TPoly(TowerElem(1L));
    TPoly nn = exact_div(n1, g1) * exact_div(n2, g2);
    TPoly dd = exact_div(d1, g2) * exact_div(d2, g1);
    return TowerElem::make(L, std::move(nn), std::move(dd));
}

TowerElem TowerElem::inverse() const {
    if (zero()) throw std::domain_error("division by the zero element");
    if (level_ < 0) return TowerElem(q_.inverse());
    const auto& [n, d] = *node_;
    TowerElem inv = n.lc().inverse();
    return make(level_, d.scale(inv), n.scale(inv));
}

TowerElem operator/(const TowerElem& a, const TowerElem& b) {
    if (b.zero()) throw std::domain_error("division by the zero element");
    if (a.level_ < 0 && b.level_ < 0) return TowerElem(a.q_ / b.q_);
    return a * b.inverse();
}

bool operator==(const TowerElem& a, const TowerElem& b) {
    if (a.level_ != b.level_) return false;
    if (a.level_ < 0) return a.q_ == b.q_;
    if (a.node_ == b.node_) return true;
    return a.node_->num == b.node_->num && a.node_->den == b.node_->den;
}

TowerElem TowerElem::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    TowerElem r(1L), base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

int max_level(const TPoly& p) {
    int m = -1;
    for (const auto& c : p.coeffs()) m = std::max(m, c.level());
    return m;
}

// ---------------------------------------------------------------------------

const char* kind_name(GenKind k) {
    switch (k) {
        case GenKind::Constant: return "constant";
        case GenKind::BaseVar: return "base";
        case GenKind::Log: return "log";
        case GenKind::Exp: return "exp";
        case GenKind::Primitive: return "primitive";
        case GenKind::HyperExp: return "hyperexp";
    }
    return "?";
}

int Tower::push(Generator g) {
    gens_.push_back(std::move(g));
    return top();
}

int Tower::add_constant(std::string name) {
    if (base_ >= 0) throw std::logic_error("constant symbols must be adjoined before the base variable");
    return push({GenKind::Constant, std::move(name), TowerElem(), TowerElem()});
}

int Tower::add_base(std::string name) {
    if (base_ >= 0) throw std::logic_error("tower already has a base variable");
    base_ = push({GenKind::BaseVar, std::move(name), TowerElem(), TowerElem(1L)});
    return base_;
}

namespace {
void require_base(const Tower& t) {
    if (t.base_level() < 0) throw std::logic_error("monomials need a base variable below them");
}
}  // namespace

int Tower::add_log(const TowerElem& u, std::string name) {
    require_base(*this);
    if (u.zero()) throw std::domain_error("logarithm of zero");
    if (u.level() > top()) throw std::invalid_argument("log argument outside the tower");
    TowerElem du = derive(u, *this);
    if (du.zero()) throw std::invalid_argument("logarithm of a constant is a constant, not a monomial");
    return push({GenKind::Log, std::move(name), u, du / u});
}

int Tower::add_exp(const TowerElem& a, std::string name) {
    require_base(*this);
    if (a.level() > top()) throw std::invalid_argument("exp argument outside the tower");
    TowerElem da = derive(a, *this);
    if (da.zero()) throw std::invalid_argument("exponential of a constant is a constant, not a monomial");
    int L = size();
    return push({GenKind::Exp, std::move(name), a, da * TowerElem::generator(L)});
}

int Tower::add_primitive(const TowerElem& a, std::string name) {
    require_base(*this);
    if (a.zero() || a.level() > top()) throw std::invalid_argument("bad primitive derivative");
    return push({GenKind::Primitive, std::move(name), a, a});
}

int Tower::add_hyperexp(const TowerElem& eta, std::string name) {
    require_base(*this);
    if (eta.zero() || eta.level() > top()) throw std::invalid_argument("bad hyperexponential log-derivative");
    int L = size();
    return push({GenKind::HyperExp, std::move(name), eta, eta * TowerElem::generator(L)});
}

TPoly Tower::deriv_poly(int L) const { return gen(L).deriv.num_at(L); }

TowerElem Tower::log_deriv(int L) const {
    const auto& g = gen(L);
    if (g.kind == GenKind::Exp) return derive(g.arg, *this);
    if (g.kind == GenKind::HyperExp) return g.arg;
    throw std::logic_error("log_deriv of a non-exponential generator");
}

bool Tower::is_exp_like(int L) const {
    auto k = gen(L).kind;
    return k == GenKind::Exp || k == GenKind::HyperExp;
}

bool Tower::is_primitive_like(int L) const {
    auto k = gen(L).kind;
    return k == GenKind::Log || k == GenKind::Primitive || k == GenKind::BaseVar;
}

// ---------------------------------------------------------------------------

TPoly derive_coeffs(const TPoly& p, const Tower& tower) {
    return p.map([&](const TowerElem& c) { return derive(c, tower); });
}

TPoly derive_poly(const TPoly& p, int L, const Tower& tower) {
    TPoly r = derive_coeffs(p, tower);
    if (p.degree() > 0) r = r + p.derivative() * tower.deriv_poly(L);
    return r;
}

namespace {

// (n/d)' for reduced n/d with monic d. With g = gcd(d, d'), the quotient
// (n'(d/g) - n(d'/g)) / (d(d/g)) can only still cancel against factors of g.
TowerElem quotient_derivative(int L, const TPoly& n, const TPoly& d, const TPoly& dn, const TPoly& dd) {
    TPoly g = gcd(d, dd);
    TPoly d1 = exact_div(d, g);
    TPoly num = dn * d1 - n * exact_div(dd, g);
    if (num.zero()) return TowerElem();
    TPoly den = d * d1;
    if (g.degree() > 0) {
        TPoly h = gcd(num, g);
        if (h.degree() > 0) {
            num = exact_div(num, h);
            den = exact_div(den, h);
        }
    }
    return TowerElem::from_reduced(L, std::move(num), std::move(den));
}

}  // namespace

TowerElem derive(const TowerElem& e, const Tower& tower) {
    const int L = e.level();
    if (L <= tower.const_top()) return TowerElem();
    TPoly n = e.num_at(L), d = e.den_at(L);
    TPoly dn = derive_poly(n, L, tower);
    if (d.degree() == 0) return TowerElem::poly(L, dn);
    return quotient_derivative(L, n, d, dn, derive_poly(d, L, tower));
}

TowerElem partial(const TowerElem& e, int k) {
    const int L = e.level();
    if (L < k) return TowerElem();
    TPoly n = e.num_at(L), d = e.den_at(L);
    TPoly dn, dd;
    if (L == k) {
        dn = n.derivative();
        dd = d.derivative();
    } else {
        auto pk = [k](const TowerElem& c) { return partial(c, k); };
        dn = n.map(pk);
        dd = d.map(pk);
    }
    if (d.degree() == 0 && dd.zero()) return TowerElem::poly(L, dn);
    if (d.degree() == 0) return TowerElem::fraction(L, dn * d - n * dd, d * d);
    return quotient_derivative(L, n, d, dn, dd);
}

// ---------------------------------------------------------------------------

const char* class_name(PolyClass c) {
    switch (c) {
        case PolyClass::Normal: return "normal";
        case PolyClass::Special: return "special";
        case PolyClass::Mixed: return "mixed";
    }
    return "?";
}

PolyClass classify(const TPoly& p, int L, const Tower& tower) {
    if (p.zero()) throw std::invalid_argument("classify: zero polynomial");
    if (gcd(p, p.derivative()).degree() > 0) throw std::invalid_argument("classify: input not squarefree");
    TPoly dp = derive_poly(p, L, tower);
    TPoly g = gcd(p, dp);
    if (g.degree() == 0) return PolyClass::Normal;
    if (g.degree() == p.degree()) return PolyClass::Special;
    return PolyClass::Mixed;
}

SplitFactorization splitting_factorization(const TPoly& d, int L, const Tower& tower) {
    if (d.zero()) throw std::invalid_argument("splitting factorization of zero");
    TPoly one(TowerElem(1L));
    SplitFactorization out{one, one};
    for (const auto& [p, m] : squarefree(d)) {
        TPoly rest = p, special = one;
        // gcd(p, Dp) collects the special factors of a squarefree p; iterate
        // until the leftover is normal.
        for (int guard = 0; rest.degree() > 0 && guard <= p.degree(); ++guard) {
            TPoly g = gcd(rest, derive_poly(rest, L, tower));
            if (g.degree() == 0) break;
            special = special * g;
            rest = exact_div(rest, g);
        }
        out.special = out.special * pow(special, m);
        out.normal = out.normal * pow(rest, m);
    }
    return out;
}

CanonicalSplit canonical_split(const TowerElem& f, int L, const Tower& tower) {
    TPoly num = f.num_at(L), den = f.den_at(L);
    auto [q, r] = divmod(num, den);
    CanonicalSplit out{q, TFrac(), TFrac()};
    if (r.zero()) return out;
    auto [ds, dn] = splitting_factorization(den, L, tower);
    // den = ds*dn (den monic); r = a_s*dn + a_n*ds with deg a_s < deg ds
    if (ds.degree() == 0) {
        out.normalpart = TFrac(r, den);
        return out;
    }
    if (dn.degree() == 0) {
        out.specialpart = TFrac(r, den);
        return out;
    }
    auto [as, an] = solve_diophantine(dn, ds, r);
    out.specialpart = TFrac(as, ds);
    out.normalpart = TFrac(an, dn);
    return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<TowerElem>> constant_equations(const std::vector<TowerElem>& row,
                                                       const Tower& tower) {
    return linear_equations(row, tower.const_top());
}

std::vector<std::vector<TowerElem>> linear_equations(const std::vector<TowerElem>& row, int stop_level) {
    int L = -1;
    for (const auto& e : row) L = std::max(L, e.level());
    if (L <= stop_level) return {row};
    TPoly D(TowerElem(1L));
    for (const auto& e : row)
        if (e.level() == L) D = lcm(D, e.den_at(L));
    std::vector<TPoly> nums;
    int deg = -1;
    for (const auto& e : row) {
        TPoly n = e.num_at(L) * exact_div(D, e.den_at(L));
        deg = std::max(deg, n.degree());
        nums.push_back(std::move(n));
    }
    std::vector<std::vector<TowerElem>> out;
    for (int k = 0; k <= deg; ++k) {
        std::vector<TowerElem> sub;
        sub.reserve(nums.size());
        bool any = false;
        for (const auto& n : nums) {
            sub.push_back(n.coeff(k));
            any = any || !sub.back().zero();
        }
        if (!any) continue;
        for (auto& r : linear_equations(sub, stop_level)) out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::vector<TowerElem>> constant_kernel(const std::vector<std::vector<TowerElem>>& rows,
                                                    std::size_t n, const Tower& tower) {
    Matrix<TowerElem> eqs;
    for (const auto& row : rows)
        for (auto& r : constant_equations(row, tower)) eqs.push_back(std::move(r));
    return nullspace(eqs, n);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool has_top_level_sum(const std::string& s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && i > 0 && (c == '+' || c == '-') && s[i - 1] != '^' && s[i - 1] != '*' &&
                 s[i - 1] != '/')
            return true;
    }
    return false;
}

bool is_atomic_den(const std::string& s) {
    // a bare name, power of a name, function call or positive integer
    if (s.empty() || s[0] == '-') return false;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (depth == 0 && (c == '+' || c == '-' || c == '*' || c == '/')) return false;
    }
    return true;
}

std::string wrap_factor(const std::string& s) {
    if (has_top_level_sum(s)) return "(" + s + ")";
    return s;
}

std::string monomial_str(const TowerElem& c, const std::string& var, int k, const Tower& tower) {
    std::string v = k == 1 ? var : var + "^" + std::to_string(k);
    if (k == 0) return format(c, tower);
    if (c.is_one()) return v;
    if (c == TowerElem(-1L)) return "-" + v;
    std::string cs = format(c, tower);
    return wrap_factor(cs) + "*" + v;
}

std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        if (!terms[i].empty() && terms[i][0] == '-') out += terms[i];
        else out += "+" + terms[i];
    }
    return out;
}

std::string var_name(int level, const Tower& tower) {
    const std::string& n = tower.gen(level).name;
    // names containing operators must be parenthesised before ^
    if (n.find_first_of("+-*/^ ") != std::string::npos && n.back() != ')') return "(" + n + ")";
    return n;
}

}  // namespace

std::string format_poly(const TPoly& p, const std::string& var, const Tower& tower) {
    std::vector<std::string> terms;
    for (int k = p.degree(); k >= 0; --k) {
        TowerElem c = p.coeff(k);
        if (c.zero()) continue;
        terms.push_back(monomial_str(c, var, k, tower));
    }
    return join_terms(terms);
}

namespace {

// An element written as flat numerator over a product of flat factors, where
// "flat" means no generator occurs in a denominator at any level.
struct FlatFactors {
    Rat intden{1};
    std::vector<std::pair<TowerElem, int>> polys;

    void absorb(const FlatFactors& o) {
        intden = Rat(mpz_class(lcm(intden.num(), o.intden.num())));
        for (const auto& [f, m] : o.polys) {
            auto it = std::find_if(polys.begin(), polys.end(), [&](const auto& p) { return p.first == f; });
            if (it == polys.end()) polys.push_back({f, m});
            else it->second = std::max(it->second, m);
        }
    }
    TowerElem product() const {
        TowerElem r(intden);
        for (const auto& [f, m] : polys) r = r * f.pow(m);
        return r;
    }
};

struct Flat {
    TowerElem num;
    FlatFactors den;
};

Flat split_flat(const TowerElem& c);

std::pair<TPoly, FlatFactors> clear_poly(const TPoly& p) {
    std::vector<Flat> parts;
    FlatFactors all;
    for (const auto& c : p.coeffs()) {
        parts.push_back(split_flat(c));
        all.absorb(parts.back().den);
    }
    std::vector<TowerElem> out;
    TowerElem total = all.product();
    for (const auto& f : parts) out.push_back(f.num.zero() ? f.num : f.num * (total / f.den.product()));
    return {TPoly(std::move(out)), all};
}

Flat split_flat(const TowerElem& c) {
    if (c.is_rational()) {
        Flat f{TowerElem(Rat(c.rat().num())), {}};
        f.den.intden = Rat(c.rat().den());
        return f;
    }
    const int k = c.level();
    auto [pp, a] = clear_poly(c.num_at(k));
    auto [qq, b] = clear_poly(c.den_at(k));
    // cancel factors common to a and b
    for (auto& [f, m] : a.polys) {
        for (auto& [g, n] : b.polys) {
            if (!(f == g)) continue;
            int common = std::min(m, n);
            m -= common;
            n -= common;
        }
    }
    auto drop = [](FlatFactors& ff) {
        std::erase_if(ff.polys, [](const auto& p) { return p.second == 0; });
    };
    drop(a);
    drop(b);
    Rat ratio = b.intden / a.intden;
    b.intden = Rat(ratio.num());
    a.intden = Rat(ratio.den());
    TowerElem num = TowerElem::poly(k, pp) * b.product();
    Flat out{num, a};
    if (qq.degree() > 0) {
        // the t_k part of the denominator: keep it as its own factor
        TowerElem q = TowerElem::poly(k, qq);
        out.den.polys.push_back({q, 1});
    } else if (!qq.zero()) {
        TowerElem inv = qq.coeff(0).inverse();
        out.num = out.num * inv;
    }
    return out;
}

std::string format_flat_poly(const TowerElem& e, const Tower& tower) {
    if (e.is_rational()) return e.rat().str();
    return format_poly(e.num_at(e.level()), var_name(e.level(), tower), tower);
}

}  // namespace

FlatForm flat_form(const TowerElem& e) {
    Flat f = split_flat(e);
    return {f.num, f.den.intden, f.den.polys};
}

int flat_degree(const TowerElem& e, int l) {
    const int k = e.level();
    if (k < l) return 0;
    if (k == l) return e.num_at(k).degree();
    int d = 0;
    for (const auto& c : e.num_at(k).coeffs()) d = std::max(d, flat_degree(c, l));
    for (const auto& c : e.den_at(k).coeffs()) d = std::max(d, flat_degree(c, l));
    return d;
}

std::string format(const TowerElem& e, const Tower& tower) {
    if (e.is_rational()) return e.rat().str();
    const int L = e.level();
    if (e.den_at(L).degree() == 0) return format_poly(e.num_at(L), var_name(L, tower), tower);
    Flat f = split_flat(e);
    std::vector<std::string> dens;
    if (!f.den.intden.is_one()) dens.push_back(f.den.intden.str());
    for (const auto& [g, m] : f.den.polys) {
        std::string s = format_flat_poly(g, tower);
        if (!is_atomic_den(s) && (f.den.polys.size() > 1 || m > 1 || !f.den.intden.is_one() ||
                                  has_top_level_sum(s)))
            s = "(" + s + ")";
        if (m > 1) s += "^" + std::to_string(m);
        dens.push_back(s);
    }
    std::string ds;
    for (std::size_t i = 0; i < dens.size(); ++i) ds += (i ? "*" : "") + dens[i];
    if (dens.size() > 1) ds = "(" + ds + ")";
    std::string ns = format_flat_poly(f.num, tower);
    bool neg = !ns.empty() && ns[0] == '-';
    if (neg) {
        std::string pos = format_flat_poly(-f.num, tower);
        return "-" + (has_top_level_sum(pos) ? "(" + pos + ")" : pos) + "/" + ds;
    }
    return (has_top_level_sum(ns) ? "(" + ns + ")" : ns) + "/" + ds;
}

}  // namespace risch
