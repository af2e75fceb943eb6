#include "doctest.h"
#include "risch/reduce.hpp"

using namespace risch;

namespace {
struct Base {
    Tower T;
    int lx;
    TowerElem x;
    Base() {
        lx = T.add_base("x");
        x = TowerElem::generator(lx);
    }
};
ZPoly zp(std::vector<TowerElem> c) { return ZPoly(std::move(c)); }
TowerElem q(long a, long b = 1) { return TowerElem(Rat(a, b)); }
}  // namespace

TEST_CASE("hermite on the rational example") {
    Base B;
    const TowerElem& x = B.x;
    TowerElem f = (x.pow(4) + 2 * x.pow(3) - x * x + 3) / (x.pow(3) + 5 * x * x + 8 * x + 4);
    for (auto v : {HermiteVariant::AllPoles, HermiteVariant::Classical}) {
        auto h = hermite_reduce(f.frac_at(B.lx), B.lx, B.T, v);
        CHECK(h.rationalpart == TowerElem(-1) / (x + 2));
        TowerElem rem = TowerElem::fraction(B.lx, h.remainder);
        CHECK(rem == (x.pow(3) - x + 1) / ((x + 1) * (x + 2)));
        CHECK(derive(h.rationalpart, B.T) + rem == f);
    }
}

TEST_CASE("hermite over an exp monomial") {
    Base B;
    int lt = B.T.add_exp(B.x, "t");
    TowerElem t = TowerElem::generator(lt), x = B.x;
    TowerElem f = ((3 * x * x + 2 * x + 2) / (x * x) * t - (2 * x * x + 2) / (x * x)) / ((t - 1) * (t - 1));
    auto h = hermite_reduce(f.frac_at(lt), lt, B.T);
    CHECK(h.rationalpart == -(x + 2) / (x * (t - 1)));
    CHECK(TowerElem::fraction(lt, h.remainder) == 2 / (t - 1));
    CHECK_THROWS(hermite_reduce((1 / (t * t)).frac_at(lt), lt, B.T));
}

TEST_CASE("log part of the rational example") {
    Base B;
    const TowerElem& x = B.x;
    TowerElem f = (6 * x + 7) / ((x + 1) * (x + 2));
    auto r = residues_logpart(f.frac_at(B.lx), B.lx, B.T);
    REQUIRE(!r.obstruction);
    REQUIRE(r.rootsums.size() == 1);
    const auto& rs = r.rootsums[0];
    CHECK(rs.rpoly == zp({q(5), q(-6), q(1)}));
    // logand x + z/4 + 3/4 (vanishes at x=-1 for z=1 and at x=-2 for z=5)
    CHECK(rs.logand == zp({x + q(3, 4), q(1, 4)}));
    CHECK(rootsum_derivative(rs, B.T) == f);
    auto ex = expand_rational_roots(rs);
    CHECK(!ex.rest);
    REQUIRE(ex.logs.size() == 2);
}

TEST_CASE("log part of 1/(x^2+1) stays symbolic") {
    Base B;
    const TowerElem& x = B.x;
    TowerElem f = 1 / (x * x + 1);
    auto r = residues_logpart(f.frac_at(B.lx), B.lx, B.T);
    REQUIRE(r.rootsums.size() == 1);
    CHECK(r.rootsums[0].rpoly == zp({q(1, 4), q(0), q(1)}));
    CHECK(r.rootsums[0].logand == zp({x, q(2)}));
    CHECK(rootsum_derivative(r.rootsums[0], B.T) == f);
    CHECK(expand_rational_roots(r.rootsums[0]).rest);
}

TEST_CASE("log part over exp, and the residue obstruction") {
    Base B;
    int lt = B.T.add_exp(B.x, "t");
    TowerElem t = TowerElem::generator(lt), x = B.x;
    auto r = residues_logpart((2 / (t - 1)).frac_at(lt), lt, B.T);
    REQUIRE(r.rootsums.size() == 1);
    CHECK(r.rootsums[0].rpoly == zp({q(-2), q(1)}));
    CHECK(r.rootsums[0].logand == zp({t - 1}));
    // 1/ln(x): residue x is not constant
    Base C;
    int ll = C.T.add_log(C.x, "l");
    TowerElem l = TowerElem::generator(ll);
    auto r2 = residues_logpart((1 / l).frac_at(ll), ll, C.T);
    CHECK(r2.obstruction);
    (void)x;
}

TEST_CASE("residue variation detects non-constant residues") {
    Base B;
    int ll = B.T.add_log(B.x, "l");
    TowerElem l = TowerElem::generator(ll), x = B.x;
    TPoly d = l.num_at(ll);
    CHECK(!residue_variation(TPoly(TowerElem(1)), d, ll, B.T).zero());
    CHECK(residue_variation(TPoly(1 / x), d, ll, B.T).zero());
}

TEST_CASE("scaling a root sum") {
    Base B;
    const TowerElem& x = B.x;
    TowerElem f = 1 / (x * x + 1);
    auto rs = residues_logpart(f.frac_at(B.lx), B.lx, B.T).rootsums.at(0);
    auto s3 = scale_rootsum(rs, q(3));
    CHECK(rootsum_derivative(s3, B.T) == 3 * f);
    auto ps = power_sums(zp({q(2), q(-3), q(1)}), 3);  // roots 1, 2
    CHECK(ps[1] == q(3));
    CHECK(ps[2] == q(5));
    CHECK(ps[3] == q(9));
}
