#pragma once

// Parametric integration: constants c with sum c_i f_i elementary, and
// creative telescoping for hyperexponential integrands with a parameter.

#include "risch/rde.hpp"

#include <optional>
#include <vector>

namespace risch {

struct ParametricEntry {
    std::vector<TowerElem> c;
    TowerElem elempart;
    std::vector<RootSum> rootsums;
};

struct ParametricBasis {
    /// The c-vectors are linearly independent.
    std::vector<ParametricEntry> entries;
    /// False when some step used the bounded solver.
    bool complete = true;
};

ParametricBasis parametric_integrate(const std::vector<TowerElem>& fs, const Tower& tower,
                                     const IntegrateOptions& opt = {});

/// Integration over the field of the given level. Without logs, only
/// antiderivatives inside that field are accepted.
ParametricBasis parametric_integrate_level(const std::vector<TowerElem>& fs, int level, bool allow_logs,
                                           const Tower& tower, const IntegrateOptions& opt = {});

/// sum c_i f_i = D g + sum D(rootsums).
struct RelationCertificate {
    std::vector<TowerElem> c;
    TowerElem g;
    std::vector<RootSum> rootsums;
};

struct VerifyResult {
    bool verified = false;
    TowerElem witness;  // the nonzero difference when refuted
};

VerifyResult verify_relation(const RelationCertificate& cert, const std::vector<TowerElem>& fs,
                             const Tower& tower);

/// Telescoper sum c_i d^i f/dy^i = D_x(R f) for hyperexponential f with
/// D_x f / f = ldx and d f/dy / f = ldy. The tower has the parameter y as a
/// constant symbol at `ylevel` and x as base variable.
struct TelescopeResult {
    int order = 0;
    std::vector<TowerElem> coeffs;
    TowerElem certificate;
};

struct TelescopeProblem {
    TowerElem ldx;
    TowerElem ldy;
    int ylevel = -1;
};

/// r_0 = 1, r_{i+1} = dr_i/dy + ldy * r_i.
std::vector<TowerElem> telescope_rhs(const TelescopeProblem& p, int order);
/// Smallest order <= maxorder, or nothing.
std::optional<TelescopeResult> az_telescope(const TelescopeProblem& p, int maxorder, const Tower& tower,
                                            const RdeOptions& opt = {});
/// Telescoper of exactly this order with c_order as pivot (c_order may still be zero
/// only if no such telescoper exists, in which case nothing is returned).
std::optional<TelescopeResult> az_telescope_fixed(const TelescopeProblem& p, int order, const Tower& tower,
                                                  const RdeOptions& opt = {});
/// D R + ldx R - sum c_i r_i, zero for a valid result.
TowerElem telescope_defect(const TelescopeProblem& p, const TelescopeResult& r, const Tower& tower);

}  // namespace risch
