#pragma once

// Expression parsing, tower construction with dependency detection, and
// rendering of results.

#include "risch/parametric.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace risch::front {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Num, Sym, Add, Sub, Mul, Div, Neg, Pow, Exp, Ln };
    Kind kind = Kind::Num;
    Rat value;         // Num
    std::string name;  // Sym
    long exponent = 0; // Pow
    std::vector<ExprPtr> args;
};

ExprPtr num(Rat v);
ExprPtr sym(std::string name);
ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args);
ExprPtr power(ExprPtr base, long e);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos);
    std::size_t pos;
};

ExprPtr parse(const std::string& text);

/// Plain-grammar text; parse(to_string(e)) reproduces e.
std::string to_string(const Expr& e);
std::string to_latex(const Expr& e);
/// Identifiers in order of first appearance.
std::vector<std::string> symbols(const Expr& e);

class BuildError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Constant symbol with an optional definition (ln(2), exp(y), ...).
struct ConstantDef {
    std::string name;
    ExprPtr definition;  // null for free parameters
};

struct TowerPlan {
    Tower tower;
    std::string var;
    /// Tower levels of the constant symbols, same order as `constants`.
    std::vector<ConstantDef> constants;
    /// Every exp/ln subterm (keyed by its plain text) and its tower element.
    std::map<std::string, TowerElem> embedding;
    /// Definition of every exp/ln generator as an expression.
    std::map<int, ExprPtr> generator_defs;
    std::map<std::string, int> symbol_levels;
};

/// Builds one tower for all expressions. `params` fixes the order of the
/// leading constant symbols; other identifiers follow in order of appearance.
TowerPlan build_tower(const std::vector<ExprPtr>& es, const std::string& var,
                      const std::vector<std::string>& params = {});

TowerElem to_tower_elem(const Expr& e, const TowerPlan& plan);

/// Tower element back to an expression with generators replaced by their definitions.
ExprPtr to_expr(const TowerElem& e, const TowerPlan& plan);

enum class Format { Plain, Latex, Json };

std::string render(const TowerElem& e, const TowerPlan& plan, Format f = Format::Plain);
std::string render_rootsum(const RootSum& rs, const TowerPlan& plan, Format f = Format::Plain);
/// elempart plus logarithmic part as a single sum.
std::string render_antiderivative(const TowerElem& elempart, const std::vector<RootSum>& rootsums,
                                  const TowerPlan& plan, Format f = Format::Plain);
std::string render_certificate(const Certificate& c, const TowerPlan& plan);

/// Log-derivatives of a hyperexponential f with respect to var and param,
/// both as elements of `plan` (which must have param as a constant symbol).
struct HyperexpData {
    TowerElem ldx;
    TowerElem ldy;
};
HyperexpData hyperexp_logderivs(const ExprPtr& f, const TowerPlan& plan, const std::string& param);

}  // namespace risch::front
