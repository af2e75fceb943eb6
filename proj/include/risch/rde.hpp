#pragma once

// Risch differential equations Dy + u*y = w, reduction of the special and
// polynomial parts, and the integration driver.

#include "risch/reduce.hpp"
#include "risch/tower.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace risch {

/// Dy + u*y = w with y sought at tower level `level` (any element of level <= level).
struct RischDE {
    TowerElem u;
    TowerElem w;
    int level = -1;
};

struct RdeOptions {
    /// Degree limit of the bounded ansatz used above the base field.
    int degree_limit = 25;
    /// Cap on the number of ansatz monomials above the base field.
    int max_terms = 600;
};

enum class RdeStatus { Solved, NoSolution, NotFoundWithinBounds };

struct RdeResult {
    RdeStatus status = RdeStatus::NoSolution;
    TowerElem y;
};

/// Complete over the base field C(x); bounded search above it.
RdeResult solve_rde(const RischDE& eq, const Tower& tower, const RdeOptions& opt = {});

/// One solution (c, y) of Dy + u*y = sum c_i w_i.
struct ParamRdeSolution {
    std::vector<TowerElem> c;
    TowerElem y;
};

struct ParamRdeResult {
    /// c-parts are linearly independent and nonzero; they span every c that admits a solution.
    std::vector<ParamRdeSolution> solutions;
    /// False when the bounded solver was used, so the span may be too small.
    bool complete = true;
};

ParamRdeResult param_rde(const TowerElem& u, const std::vector<TowerElem>& ws, int level,
                         const Tower& tower, const RdeOptions& opt = {});

// Pieces of the base-field solver, exposed for testing.

/// q with u - Dq/q free of positive integer residues at simple poles.
TowerElem weak_normalizer(const TowerElem& u, const Tower& tower);
/// h such that every solution y of Dy + u*y = w has h*y polynomial (u weakly normalized).
TowerElem rde_denominator_bound(const TowerElem& u, const std::vector<TowerElem>& ws, const Tower& tower);
/// Degree bound n for a*Dq + b*q = c with polynomial a, b and deg c <= dc.
int rde_degree_bound(const TPoly& a, const TPoly& b, int dc);
/// Nonnegative integers n with r(n) = 0, r over the constant field.
std::vector<long> integer_roots(const ZPoly& r, const Tower& tower);

// ---------------------------------------------------------------------------
// Integration

enum class Status { Elementary, NonElementary, NonElementaryWithinBounds };
const char* status_name(Status s);

struct Certificate {
    enum class Kind { Rde, Residue, LimitedIntegral };
    Kind kind = Kind::Rde;
    /// Kind::Rde: the unsolvable equation.
    RischDE rde;
    /// Kind::Residue: factor of the resultant with non-constant roots, at `level`.
    ZPoly witness;
    /// Kind::LimitedIntegral: coefficient that has no integral of the form b + e*t_level.
    TowerElem integrand;
    /// Kind::LimitedIntegral: a second integrand that may be added with a constant factor.
    TowerElem extra;
    bool allow_logs = false;
    int level = -1;
    /// True when the verdict relies on the bounded solver.
    bool bounded = false;
};

struct HermiteStep {
    int level;
    TowerElem rationalpart;
    /// Remainder including the polynomial part of the input.
    TowerElem remainder;
};

struct ResidueStep {
    int level;
    ZPoly resultant;
    std::vector<RootSum> rootsums;
};

struct IntegrationTrace {
    std::vector<HermiteStep> hermite;
    std::vector<ResidueStep> residues;
};

struct IntegrationOutcome {
    Status status = Status::Elementary;
    TowerElem elempart;
    std::vector<RootSum> rootsums;
    TowerElem residual;
    std::optional<Certificate> certificate;
    IntegrationTrace trace;
};

struct IntegrateOptions {
    HermiteVariant hermite = HermiteVariant::AllPoles;
    RdeOptions rde;
};

IntegrationOutcome integrate(const TowerElem& f, const Tower& tower, const IntegrateOptions& opt = {});

/// Replays a certificate: true if the obstruction is reproduced.
bool replay_certificate(const Certificate& cert, const Tower& tower, const RdeOptions& opt = {});

// Single-integrand reductions in K(t), t = t_L exponential or hyperexponential.

struct SpecialReduction {
    TowerElem g;  // f - Dg has no pole at t = 0
    std::optional<Certificate> failure;
};
/// f with denominator a power of t (times a unit).
SpecialReduction reduce_special(const TowerElem& f, int L, const Tower& tower, const RdeOptions& opt = {});

struct PolynomialReduction {
    TowerElem g;
    TowerElem residual;  // element of the level below L
    std::optional<Certificate> failure;
};
/// p a polynomial in t_L; leaves the part that has to be integrated one level down.
PolynomialReduction reduce_polynomial(const TPoly& p, int L, const Tower& tower, const RdeOptions& opt = {});

}  // namespace risch
