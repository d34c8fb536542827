#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weil/symplectic.hpp"
#include "weil/weil_model.hpp"

using namespace weil;

TEST_CASE("Sp orders against the product formula") {
    CHECK(oracle::sp_order(3, 1) == 24);
    CHECK(oracle::sp_order(5, 1) == 120);
    CHECK(oracle::sp_order(3, 2) == 51840);
    for (auto [p, f, m] : {std::tuple{3L, 1, 1}, std::tuple{5L, 1, 1}, std::tuple{3L, 1, 2}, std::tuple{3L, 2, 1},
                           std::tuple{7L, 1, 2}}) {
        SymplecticSpace s(FqField::get(p, f), m);
        CHECK(s.group_order() == oracle::sp_order(FqField::get(p, f).q(), m));
    }
}

TEST_CASE("enumeration of Sp(2, F_q) is exact and symplectic") {
    for (long p : {3, 5}) {
        SymplecticSpace s(FqField::get(p, 1), 1);
        auto all = sp_enumerate(s, 1000);
        CHECK(all.size() == oracle::sp_order(p, 1));
        for (const auto& g : all) CHECK(s.is_symplectic(g));
        CHECK(std::is_sorted(all.begin(), all.end()));
        CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
    }
    SymplecticSpace big(FqField::get(3, 2), 2);
    CHECK_THROWS_AS(sp_enumerate(big, 1000), Error);
}

TEST_CASE("sp_factor round-trips") {
    SymplecticSpace s(FqField::get(3, 1), 1);
    for (const auto& g : sp_enumerate(s, 100)) CHECK(eval_word(s, sp_factor(s, g)) == g);
    for (auto [p, f, m] : {std::tuple{3L, 1, 2}, std::tuple{5L, 1, 2}, std::tuple{3L, 2, 1}, std::tuple{3L, 1, 3}}) {
        SymplecticSpace t(FqField::get(p, f), m);
        std::mt19937_64 rng(11);
        for (int i = 0; i < 60; ++i) {
            FqMat g = random_sp_element(t, rng);
            REQUIRE(t.is_symplectic(g));
            CHECK(eval_word(t, sp_factor(t, g)) == g);
        }
    }
}

TEST_CASE("generators are symplectic and W0 squares to -1") {
    SymplecticSpace s(FqField::get(5, 1), 2);
    for (const auto& t : sp_generators(s)) CHECK(s.is_symplectic(token_matrix(s, t)));
    const FqField& F = *s.F;
    CHECK(sp_w0(s) * sp_w0(s) == FqMat::scalar(F, 4, F.neg(F.one())));
}

TEST_CASE("Heisenberg group law: center, inverses, Sp action") {
    SymplecticSpace s(FqField::get(3, 1), 1);
    auto H = heis_enumerate(s, 1000);
    CHECK(H.size() == 27);
    const HeisElem e = heis_identity(s);
    for (const auto& a : H) {
        CHECK(heis_mul(s, a, heis_inv(s, a)) == e);
        for (const auto& b : H)
            for (const auto& g : sp_enumerate(s, 100))
                if (a.t == 0 && b.t == 1) // keep the triple loop small
                    CHECK(sp_act(s, g, heis_mul(s, a, b)) == heis_mul(s, sp_act(s, g, a), sp_act(s, g, b)));
    }
}
