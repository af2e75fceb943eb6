#include "doctest.h"

#include "../support/oracles.hpp"
#include "risch/parametric.hpp"

using namespace risch;

TEST_CASE("parametric basis verifies and has full rank and the expected dimension") {
    Tower T;
    TowerElem x = TowerElem::generator(T.add_base("x"));
    int l1 = T.add_exp(x, "t1");
    int l2 = T.add_exp(x * x, "t2");
    TowerElem t1 = TowerElem::generator(l1), t2 = TowerElem::generator(l2);
    oracle::Rng r(51);
    for (int i = 0; i < 60; ++i) {
        // two derivatives and two integrands independent modulo derivatives
        std::vector<TowerElem> B = {derive(oracle::random_elem(r, l1, 1, 1), T),
                                    derive(oracle::random_elem(r, 0, 2, 1) * t2, T), t2, t1 / x};
        const int n = static_cast<int>(r.range(2, 4));
        Matrix<Rat> M(static_cast<std::size_t>(n), std::vector<Rat>(4));
        std::vector<TowerElem> fs;
        for (auto& row : M) {
            TowerElem f(0);
            for (std::size_t j = 0; j < 4; ++j) {
                row[j] = r.coin(0.4) ? Rat(0) : r.small_rat(3);
                f += TowerElem(row[j]) * B[j];
            }
            fs.push_back(f);
        }
        // c^T M must vanish on the two non-integrable columns
        Matrix<Rat> obstruct(2, std::vector<Rat>(static_cast<std::size_t>(n)));
        for (int k = 0; k < n; ++k)
            for (std::size_t j = 0; j < 2; ++j) obstruct[j][static_cast<std::size_t>(k)] = M[static_cast<std::size_t>(k)][j + 2];
        std::size_t expected = static_cast<std::size_t>(n) - rank(obstruct, static_cast<std::size_t>(n));

        auto basis = parametric_integrate(fs, T);
        CAPTURE(i);
        REQUIRE(basis.entries.size() == expected);
        Matrix<TowerElem> C;
        for (const auto& e : basis.entries) {
            REQUIRE(verify_relation({e.c, e.elempart, e.rootsums}, fs, T).verified);
            for (const auto& c : e.c) REQUIRE(T.is_constant(c));
            C.push_back(e.c);
        }
        REQUIRE(rank(C, static_cast<std::size_t>(n)) == basis.entries.size());
    }
}

TEST_CASE("telescopers replay and are minimal") {
    Tower T;
    int ly = T.add_constant("y");
    TowerElem y = TowerElem::generator(ly);
    TowerElem x = TowerElem::generator(T.add_base("x"));
    oracle::Rng r(52);
    for (int i = 0; i < 30; ++i) {
        // f = exp(a*x*y + b*y*x^2 + c*x)
        TowerElem a(r.small_rat(3)), b(r.small_rat(3)), c(r.small_rat(3));
        if (a.zero() && b.zero()) b = TowerElem(1);
        TelescopeProblem p{a * y + 2 * b * y * x + c, a * x + b * x * x, ly};
        CAPTURE(i);
        auto tr = az_telescope(p, 3, T);
        REQUIRE(tr);
        REQUIRE(telescope_defect(p, *tr, T).zero());
        REQUIRE(!tr->coeffs.back().zero());
        if (tr->order > 0) REQUIRE(!az_telescope(p, tr->order - 1, T));
    }
}
