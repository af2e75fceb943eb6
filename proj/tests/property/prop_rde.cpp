#include "doctest.h"

#include "../support/oracles.hpp"
#include "risch/rde.hpp"

using namespace risch;
using oracle::QFrac;
using oracle::QPoly;

namespace {

struct Base {
    Tower T;
    int lx;
    Base() { lx = T.add_base("x"); }
};

QFrac random_u(oracle::Rng& r) {
    switch (r.range(0, 3)) {
    case 0: return QFrac(oracle::random_poly(r, 3));
    case 1: {
        // integer residue at a simple pole
        QPoly p = oracle::random_monic(r, 1);
        return QFrac(QPoly(Rat(r.range(-4, 4))), p) + QFrac(oracle::random_poly(r, 1));
    }
    case 2: return oracle::random_frac(r, 2, 2);
    default: {
        QPoly p = oracle::random_monic(r, 1);
        return QFrac(oracle::random_poly(r, 1), p * p);
    }
    }
}

TowerElem total(const IntegrationOutcome& o, const Tower& T) {
    TowerElem d = derive(o.elempart, T) + o.residual;
    for (const auto& rs : o.rootsums) d += rootsum_derivative(rs, T);
    return d;
}

std::vector<Tower> towers() {
    std::vector<Tower> out;
    {
        Tower T;
        TowerElem x = TowerElem::generator(T.add_base("x"));
        T.add_exp(x, "t");
        out.push_back(T);
    }
    {
        Tower T;
        TowerElem x = TowerElem::generator(T.add_base("x"));
        T.add_log(x, "l");
        out.push_back(T);
    }
    {
        Tower T;
        TowerElem x = TowerElem::generator(T.add_base("x"));
        T.add_exp(x * x, "t");
        out.push_back(T);
    }
    return out;
}

}  // namespace

TEST_CASE("solve_rde at the base level agrees with the brute-force oracle (solvable)") {
    Base B;
    oracle::Rng r(41);
    int solvable = 0;
    while (solvable < 200) {
        QFrac y = oracle::random_frac(r, 6, 3), u = random_u(r);
        QFrac w = oracle::frac_derivative(y) + u * y;
        TowerElem U = oracle::to_elem(u, B.lx), W = oracle::to_elem(w, B.lx);
        auto res = solve_rde({U, W, B.lx}, B.T);
        REQUIRE(res.status == RdeStatus::Solved);
        QFrac ys = oracle::to_frac(res.y, B.lx);
        REQUIRE(oracle::satisfies_rde(ys, u, w));
        auto yb = oracle::brute_rde(u, w);
        REQUIRE(yb);
        REQUIRE(oracle::satisfies_rde(*yb, u, w));
        // solutions differ by a solution of the homogeneous equation
        REQUIRE(oracle::satisfies_rde(ys - *yb, u, QFrac()));
        ++solvable;
    }
}

TEST_CASE("solve_rde at the base level agrees with the brute-force oracle (random)") {
    Base B;
    oracle::Rng r(42);
    int none = 0;
    for (int i = 0; i < 200; ++i) {
        QFrac u = random_u(r), w = oracle::random_frac(r, 3, 2);
        auto res = solve_rde({oracle::to_elem(u, B.lx), oracle::to_elem(w, B.lx), B.lx}, B.T);
        auto yb = oracle::brute_rde(u, w);
        REQUIRE(res.status != RdeStatus::NotFoundWithinBounds);
        REQUIRE((res.status == RdeStatus::Solved) == yb.has_value());
        if (res.status == RdeStatus::Solved)
            REQUIRE(oracle::satisfies_rde(oracle::to_frac(res.y, B.lx), u, w));
        else
            ++none;
    }
    CHECK(none > 20);
}

TEST_CASE("integrate round-trips on derivatives of random tower elements") {
    oracle::Rng r(43);
    for (const auto& T : towers()) {
        for (int i = 0; i < 300; ++i) {
            TowerElem g = oracle::random_elem(r, T.top());
            TowerElem f = derive(g, T);
            auto o = integrate(f, T);
            REQUIRE(o.status == Status::Elementary);
            REQUIRE(o.residual.zero());
            REQUIRE(total(o, T) == f);
            // antiderivatives differ by a constant
            REQUIRE((T.is_constant(o.elempart - g) || !o.rootsums.empty()));
        }
    }
}

TEST_CASE("integrate identity and certificate replay on random integrands") {
    oracle::Rng r(44);
    int negative = 0;
    for (const auto& T : towers()) {
        for (int i = 0; i < 300; ++i) {
            TowerElem f = oracle::random_elem(r, T.top());
            auto o = integrate(f, T);
            REQUIRE(total(o, T) == f);
            if (o.status == Status::Elementary) {
                REQUIRE(o.residual.zero());
                continue;
            }
            ++negative;
            REQUIRE(o.certificate);
            REQUIRE(replay_certificate(*o.certificate, T));
        }
    }
    CHECK(negative > 100);
}

TEST_CASE("integrate is linear") {
    oracle::Rng r(45);
    for (const auto& T : towers()) {
        for (int i = 0; i < 100; ++i) {
            TowerElem f = derive(oracle::random_elem(r, T.top()), T) + oracle::random_elem(r, 0, 1, 2);
            TowerElem g = derive(oracle::random_elem(r, T.top()), T) + oracle::random_elem(r, 0, 1, 2);
            TowerElem a(r.nonzero_rat()), b(r.nonzero_rat());
            auto of = integrate(f, T), og = integrate(g, T), oh = integrate(a * f + b * g, T);
            if (of.status != Status::Elementary || og.status != Status::Elementary) continue;
            REQUIRE(oh.status == Status::Elementary);
            REQUIRE(total(oh, T) - a * total(of, T) - b * total(og, T) == TowerElem(0));
        }
    }
}
