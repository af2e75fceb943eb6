#pragma once

// Hermite reduction and the logarithmic part (Lazard-Rioboo-Trager) in a
// monomial extension K(t), t = t_L.

#include "risch/tower.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace risch {

/// Polynomial in the residue variable z over the tower field.
using ZPoly = Poly<TowerElem>;

struct HermiteResult {
    TowerElem rationalpart;
    TFrac remainder;  // squarefree normal denominator
};

enum class HermiteVariant { AllPoles, Classical };

/// f must have a normal denominator. The numerator may have any degree.
HermiteResult hermite_reduce(const TFrac& f, int L, const Tower& tower,
                             HermiteVariant variant = HermiteVariant::AllPoles);

/// sum over the roots z of rpoly of z*log(logand(z, t_L)).
struct RootSum {
    ZPoly rpoly;   // monic, squarefree, constant coefficients
    ZPoly logand;  // coefficients are polynomials in t_L (level <= L), reduced mod rpoly
    int level = -1;
};

struct ResidueResult {
    std::vector<RootSum> rootsums;
    /// Set when some residue is not a constant; holds the offending factor of
    /// the resultant.
    std::optional<ZPoly> obstruction;
    /// Resultant r(z) before splitting, for tracing.
    ZPoly resultant;
};

/// f = a/d, d squarefree and normal, deg a < deg d.
ResidueResult residues_logpart(const TFrac& f, int L, const Tower& tower);

/// D of a RootSum computed as a trace in K(t)[z]/(rpoly); no roots are extracted.
TowerElem rootsum_derivative(const RootSum& rs, const Tower& tower);
TowerElem subtract_logderivative(const TowerElem& f, const std::vector<RootSum>& rootsums,
                                 const Tower& tower);

/// The RootSum with every residue multiplied by a nonzero constant.
RootSum scale_rootsum(const RootSum& rs, const TowerElem& lambda);

/// Terms c*log(u) for the rational roots of rpoly, plus what remains.
struct ExpandedRootSum {
    std::vector<std::pair<TowerElem, TowerElem>> logs;  // (coefficient, argument)
    std::optional<RootSum> rest;
};
ExpandedRootSum expand_rational_roots(const RootSum& rs);

/// Residue function rho = a * (Dd)^{-1} mod d for f = a/d.
TPoly residue_function(const TPoly& a, const TPoly& d, int L, const Tower& tower);
/// The numerator delta(rho) mod d whose vanishing says every residue of a/d is constant.
TPoly residue_variation(const TPoly& a, const TPoly& d, int L, const Tower& tower);

/// True if every coefficient is a constant of the tower.
bool has_constant_coeffs(const ZPoly& p, const Tower& tower);

/// Distinct rational roots (empty when the integer coefficients are too large to search).
std::vector<Rat> rational_roots(Poly<Rat> q);

/// Sum of the k-th powers of the roots of a monic polynomial, k = 0..n.
std::vector<TowerElem> power_sums(const ZPoly& q, int n);

}  // namespace risch
