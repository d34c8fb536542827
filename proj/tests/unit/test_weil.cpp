#include <doctest.h>

#include "weil/rationality.hpp"
#include "weil/weil_model.hpp"

using namespace weil;

namespace {

WeilModel model(long p, int f, int m) {
    const FqField& F = FqField::get(p, f);
    return WeilModel(SymplecticSpace(F, m), AdditiveCharacter(F, default_coeff_field(p)));
}

} // namespace

TEST_CASE("Heisenberg representation is a homomorphism, exhaustively at q = 3") {
    WeilModel w = model(3, 1, 1);
    const auto& s = w.space();
    auto H = heis_enumerate(s, 100);
    REQUIRE(H.size() == 27);
    for (const auto& a : H)
        for (const auto& b : H) CHECK(w.heisenberg(a) * w.heisenberg(b) == w.heisenberg(heis_mul(s, a, b)));
    // central character: (0, t) acts by psi(t)
    HeisElem z{{0, 0}, 1};
    CHECK(w.heisenberg(z) == Mat::scalar(w.psi()(1), 3));
}

TEST_CASE("Weil cocycle takes values in {1, -1}") {
    WeilModel w = model(3, 1, 1);
    CocycleCert c = cocycle_certificate(w, true, 0, 1);
    CHECK(c.exhaustive);
    CHECK(c.pairs == 24 * 24);
    CHECK(c.ok());
    WeilModel w5 = model(5, 1, 1);
    CocycleCert d = cocycle_certificate(w5, false, 200, 5);
    CHECK(d.pairs == 200);
    CHECK(d.ok());
}

TEST_CASE("intertwining, twisting and semilinearity identities") {
    for (auto [p, f, m] : {std::tuple{3L, 1, 1}, std::tuple{5L, 1, 1}, std::tuple{3L, 1, 2}, std::tuple{3L, 2, 1}}) {
        WeilModel w = model(p, f, m);
        CHECK(intertwining_check(w).all_passed());
        const FqField& F = *w.space().F;
        for (Fq g = 1; g < static_cast<Fq>(F.q()); ++g)
            CHECK(weil_twist_check(w.space(), w.psi(), g).all_passed());
        for (long u : w.field().galois_group()) CHECK(semilinearity_check(w, u, 3, 10).all_passed());
    }
}

TEST_CASE("even and odd parts have dimensions (q+1)/2 and (q-1)/2") {
    for (auto [p, f] : {std::pair{3L, 1}, std::pair{5L, 1}, std::pair{3L, 2}, std::pair{7L, 1}}) {
        WeilModel w = model(p, f, 1);
        const std::size_t q = FqField::get(p, f).q();
        CHECK(w.part_dim(Part::even) == (q + 1) / 2);
        CHECK(w.part_dim(Part::odd) == (q - 1) / 2);
        CHECK(w.rep(Part::even).dim + w.rep(Part::odd).dim == q);
    }
}

TEST_CASE("w(c) kernel formula agrees with the factorised operator") {
    WeilModel w = model(5, 1, 1);
    const FqField& F = *w.space().F;
    for (Fq c = 1; c < 5; ++c) {
        FqMat cm = FqMat::scalar(F, 1, c);
        CHECK(w.w_formula(cm) == w.omega(sp_w(w.space(), cm)));
    }
}

TEST_CASE("Stone-von Neumann: commutant of the Heisenberg rep is the scalars") {
    for (auto [p, f] : {std::pair{3L, 1}, std::pair{5L, 1}}) {
        WeilModel w = model(p, f, 1);
        MarkedRep rho = w.heisenberg_rep();
        CHECK(intertwiners(rho, rho).size() == 1);
        for (long u : w.field().galois_group())
            CHECK(iso_test(rho, rho.galois_conjugate(u)).has_value() == (u == 1));
    }
}

TEST_CASE("invalid inputs are rejected") {
    CHECK_THROWS_AS(FqField::get(2, 1), Error);
    CHECK_THROWS_AS(FqField::get(9, 1), Error);
}
