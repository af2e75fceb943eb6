#pragma once

// High-precision numeric check of antiderivatives: D(result) - integrand at
// random points, with RootSum roots found numerically.

#include "risch/frontend.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace risch::numeric {

using Real = boost::multiprecision::mpfr_float;

struct Complex {
    Real re, im;
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Real abs(const Complex& a);
Complex exp(const Complex& a);
Complex log(const Complex& a);

/// Sets the working precision in decimal digits for subsequent computations.
void set_precision(int digits);

/// All complex roots of sum c_k z^k (leading coefficient nonzero).
std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs);

struct Options {
    int samples = 16;
    int digits = 50;
    std::uint64_t seed = 1;
};

struct Sample {
    std::string point;
    std::string residual;
};

struct Report {
    std::vector<Sample> samples;
    std::string max_residual;
    std::string threshold;
    bool pass = false;
};

/// Checks f = D(elempart + sum rootsums) + residual, differentiating numerically.
/// Residuals are scaled by max(1, |f|).
Report check_antiderivative(const TowerElem& f, const TowerElem& elempart, const std::vector<RootSum>& rootsums,
                            const TowerElem& residual, const front::TowerPlan& plan, const Options& opt = {});

}  // namespace risch::numeric
