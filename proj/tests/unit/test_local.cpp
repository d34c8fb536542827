#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weil/local_symbols.hpp"

using namespace weil;

namespace {

std::vector<long> bad_primes(long a, long b) {
    std::vector<long> ps{2};
    for (long x : {a, b}) {
        x = std::labs(x);
        for (long d = 3; d <= x; d += 2)
            if (x % d == 0 && is_prime(d)) ps.push_back(d);
    }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

} // namespace

TEST_CASE("Hilbert symbols agree with the closed-form oracle") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        long a = static_cast<long>(rng() % 121) - 60, b = static_cast<long>(rng() % 121) - 60;
        if (!a || !b) continue;
        for (long v : {0L, 2L, 3L, 5L, 7L, 11L, 13L})
            CHECK(hilbert_symbol(a, b, v ? Place::prime(v) : Place::infinity()) ==
                  oracle::hilbert(a, b, v));
    }
}

TEST_CASE("Hilbert symbols agree with brute-force solubility at small odd primes") {
    for (long v : {3L, 5L})
        for (long a = -6; a <= 6; ++a)
            for (long b = -6; b <= 6; ++b) {
                if (!a || !b) continue;
                CHECK(hilbert_symbol(a, b, Place::prime(v)) == oracle::hilbert_brute(a, b, v));
                CHECK(hilbert_symbol_search(a, b, v) == oracle::hilbert_brute(a, b, v));
            }
}

TEST_CASE("frozen symbol values") {
    CHECK(hilbert_symbol(-1, -1, Place::prime(2)) == -1);
    CHECK(hilbert_symbol(-1, -1, Place::infinity()) == -1);
    CHECK(hilbert_symbol(2, 3, Place::prime(3)) == -1);
    CHECK(hilbert_symbol(5, 5, Place::prime(5)) == 1);
    // 1/3 and 3 share a square class: (3,3)_3 = (3,-1)_3 = (-1/3) = -1
    CHECK(hilbert_symbol(mpq_class(1, 3), 3, Place::prime(3)) == -1);
    CHECK(hilbert_symbol(3, 3, Place::prime(3)) == -1);
}

TEST_CASE("Hilbert symbol identities on seeded inputs") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 100; ++t) {
        long a = static_cast<long>(rng() % 61) - 30, b = static_cast<long>(rng() % 61) - 30,
             c = static_cast<long>(rng() % 61) - 30;
        if (!a || !b || !c) continue;
        int prod = hilbert_symbol(a, b, Place::infinity());
        for (long v : bad_primes(a, b)) prod *= hilbert_symbol(a, b, Place::prime(v));
        CHECK(prod == 1);
        for (long v : {2L, 3L, 5L}) {
            Place P = Place::prime(v);
            CHECK(hilbert_symbol(a, b, P) == hilbert_symbol(b, a, P));
            CHECK(hilbert_symbol(a, -a, P) == 1);
            CHECK(hilbert_symbol(a, b * c, P) == hilbert_symbol(a, b, P) * hilbert_symbol(a, c, P));
            if (a != 1) CHECK(hilbert_symbol(a, 1 - a, P) == 1);
        }
    }
}

TEST_CASE("quaternion ramification sets") {
    auto names = [](const std::vector<Place>& s) {
        std::vector<std::string> r;
        for (const auto& p : s) r.push_back(p.str());
        return r;
    };
    CHECK(names(quaternion_ramification(-1, -1)) == std::vector<std::string>{"2", "inf"});
    CHECK(names(quaternion_ramification(-1, -3)) == std::vector<std::string>{"3", "inf"});
    CHECK(names(quaternion_ramification(-1, -5)).size() % 2 == 0);
    CHECK(quaternion_ramification(1, 7).empty());
    CHECK(quaternion_ramification(2, 7).empty());
}

TEST_CASE("odd-p decision table") {
    SchurDecision d = schur_index_decision(5, 1);
    CHECK(subfield_name(d.even.character_field) == "Q(sqrt(5))");
    CHECK(subfield_name(d.odd.realisation_field) == "Q(sqrt(5),sqrt(-5))");
    CHECK(d.odd.schur_index == 2);
    SchurDecision e = schur_index_decision(7, 1);
    CHECK(e.odd.schur_index == 1);
    CHECK(subfield_name(e.odd.realisation_field) == "Q(sqrt(-7))");
    SchurDecision g = schur_index_decision(3, 2);
    CHECK(g.even.character_field.degree() == 1);
    CHECK(subfield_name(g.odd.realisation_field) == "Q(sqrt(-3))");
    CHECK(g.odd.schur_index == 2);
    CHECK(g.even.schur_index == 1);
}

TEST_CASE("2-adic unit squares") {
    CHECK(is_2adic_unit_square(17));
    CHECK(!is_2adic_unit_square(3));
    CHECK(!is_2adic_unit_square(4));
    CHECK(compute_A_for_Q2() == SquareClassGroupA::squaresOnly);
    CHECK(parse_square_class("classMinus1") == SquareClassGroupA::classMinus1);
    CHECK(!parse_square_class("bogus"));
}
