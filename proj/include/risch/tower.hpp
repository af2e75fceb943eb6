#pragma once

// Differential field towers C(x)(t_1)...(t_n) with a recursive rational
// representation: an element at level L is a reduced quotient of polynomials
// in t_L whose coefficients are elements of strictly lower level. Level -1 is
// Q itself. Constant symbols occupy the lowest levels, below the base
// variable x.

#include "risch/linalg.hpp"
#include "risch/poly.hpp"
#include "risch/rat.hpp"
#include "risch/ratfrac.hpp"

#include <memory>
#include <string>
#include <vector>

namespace risch {

class TowerElem;
using TPoly = Poly<TowerElem>;
using TFrac = RatFrac<TowerElem>;

class TowerElem {
public:
    TowerElem() = default;
    TowerElem(long v) : q_(v) {}
    TowerElem(int v) : q_(static_cast<long>(v)) {}
    TowerElem(Rat r) : q_(std::move(r)) {}

    /// The generator t_level itself.
    static TowerElem generator(int level);
    /// num/den as polynomials in t_level; reduces, makes den monic and drops
    /// to the minimal level.
    static TowerElem fraction(int level, TPoly num, TPoly den);
    static TowerElem poly(int level, TPoly p);
    static TowerElem fraction(int level, const TFrac& f) { return fraction(level, f.num(), f.den()); }
    /// num/den known to be coprime with den monic; only drops to the minimal level.
    static TowerElem from_reduced(int level, TPoly num, TPoly den) { return make(level, std::move(num), std::move(den)); }

    int level() const { return level_; }
    bool is_rational() const { return level_ < 0; }
    const Rat& rat() const;
    bool zero() const { return level_ < 0 && q_.is_zero(); }
    bool is_one() const { return level_ < 0 && q_.is_one(); }

    /// Numerator/denominator viewed as polynomials in t_L, L >= level().
    TPoly num_at(int L) const;
    TPoly den_at(int L) const;
    TFrac frac_at(int L) const { return TFrac(num_at(L), den_at(L)); }
    /// True when the element is a polynomial in t_L (denominator free of t_L).
    bool is_poly_at(int L) const { return level_ < L || den_at(L).degree() == 0; }

    TowerElem operator-() const;
    friend TowerElem operator+(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator-(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator*(const TowerElem& a, const TowerElem& b);
    friend TowerElem operator/(const TowerElem& a, const TowerElem& b);
    TowerElem& operator+=(const TowerElem& o) { return *this = *this + o; }
    TowerElem& operator-=(const TowerElem& o) { return *this = *this - o; }
    TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }
    friend bool operator==(const TowerElem& a, const TowerElem& b);

    TowerElem inverse() const;
    TowerElem pow(int e) const;

private:
    struct Node;
    int level_ = -1;
    Rat q_;
    std::shared_ptr<const Node> node_;
    static TowerElem make(int level, TPoly num, TPoly den);  // already reduced
};

inline bool is_zero(const TowerElem& e) { return e.zero(); }
inline TowerElem exact_div(const TowerElem& a, const TowerElem& b) { return a / b; }

/// Monic gcd in K[t]. Tries a coprimality certificate by specializing the
/// lower generators at a rational point before running Euclid.
template <>
TPoly gcd<TowerElem>(TPoly a, TPoly b);

enum class GenKind { Constant, BaseVar, Log, Exp, Primitive, HyperExp };

const char* kind_name(GenKind k);

struct Generator {
    GenKind kind;
    std::string name;
    /// Log: the logarithm's argument u; Exp: the exponent a; Primitive: Dt;
    /// HyperExp: Dt/t. Unused for Constant and BaseVar.
    TowerElem arg;
    /// Dt, an element of K[t] (level <= own index).
    TowerElem deriv;
};

class Tower {
public:
    int add_constant(std::string name);
    int add_base(std::string name);
    int add_log(const TowerElem& u, std::string name);
    int add_exp(const TowerElem& a, std::string name);
    int add_primitive(const TowerElem& a, std::string name);
    int add_hyperexp(const TowerElem& eta, std::string name);

    int size() const { return static_cast<int>(gens_.size()); }
    int top() const { return size() - 1; }
    const Generator& gen(int i) const { return gens_.at(static_cast<std::size_t>(i)); }
    const std::vector<Generator>& gens() const { return gens_; }
    int base_level() const { return base_; }
    /// Highest level that still consists of constants.
    int const_top() const { return base_ < 0 ? size() - 1 : base_ - 1; }

    bool is_constant(const TowerElem& e) const { return e.level() <= const_top(); }
    /// Dt_L as a polynomial in t_L.
    TPoly deriv_poly(int L) const;
    int deriv_degree(int L) const { return deriv_poly(L).degree(); }
    /// Dt/t for exponential and hyperexponential generators.
    TowerElem log_deriv(int L) const;
    bool is_exp_like(int L) const;
    bool is_primitive_like(int L) const;

private:
    int push(Generator g);
    std::vector<Generator> gens_;
    int base_ = -1;
};

// ---------------------------------------------------------------------------
// Derivations

TowerElem derive(const TowerElem& e, const Tower& tower);
/// D applied to a polynomial in t_L (coefficients differentiated, plus dp/dt * Dt).
TPoly derive_poly(const TPoly& p, int L, const Tower& tower);
/// Coefficient derivation: D on the coefficients only, t_L treated as constant.
TPoly derive_coeffs(const TPoly& p, const Tower& tower);
/// Formal partial derivative with respect to generator k.
TowerElem partial(const TowerElem& e, int k);

// ---------------------------------------------------------------------------
// Normal / special structure

enum class PolyClass { Normal, Special, Mixed };
const char* class_name(PolyClass c);

/// Classification of a squarefree polynomial in t_L; throws on non-squarefree input.
PolyClass classify(const TPoly& p, int L, const Tower& tower);

struct SplitFactorization {
    TPoly special;
    TPoly normal;
};
/// d = unit * special * normal (both monic).
SplitFactorization splitting_factorization(const TPoly& d, int L, const Tower& tower);

struct CanonicalSplit {
    TPoly polypart;
    TFrac specialpart;
    TFrac normalpart;
};
/// f = polypart + specialpart + normalpart with respect to t_L.
CanonicalSplit canonical_split(const TowerElem& f, int L, const Tower& tower);

// ---------------------------------------------------------------------------
// Linear algebra over the constant field

/// Splits the condition sum_i c_i * row[i] = 0 (c_i constants) into equivalent
/// equations whose coefficients are constants.
std::vector<std::vector<TowerElem>> constant_equations(const std::vector<TowerElem>& row,
                                                       const Tower& tower);
/// As constant_equations, but splitting down to coefficients of level <= stop_level.
std::vector<std::vector<TowerElem>> linear_equations(const std::vector<TowerElem>& row, int stop_level);
/// Basis of {c in C^n : sum_i c_i * rows[r][i] = 0 for all r}.
std::vector<std::vector<TowerElem>> constant_kernel(const std::vector<std::vector<TowerElem>>& rows,
                                                    std::size_t n, const Tower& tower);

// ---------------------------------------------------------------------------
// Text

/// Compact plain-grammar rendering, e.g. "(x^2+1)/x".
std::string format(const TowerElem& e, const Tower& tower);
std::string format_poly(const TPoly& p, const std::string& var, const Tower& tower);

/// e = num / (intden * prod f^m) where num and every factor f have no
/// generator in a denominator at any level.
struct FlatForm {
    TowerElem num;
    Rat intden{1};
    std::vector<std::pair<TowerElem, int>> den;
};
FlatForm flat_form(const TowerElem& e);
/// Degree in t_l of an element with no generator in a denominator.
int flat_degree(const TowerElem& e, int l);

/// Maximal level appearing anywhere in a polynomial's coefficients.
int max_level(const TPoly& p);

}  // namespace risch
