#include <doctest.h>

#include "weil/rationality.hpp"

using namespace weil;

namespace {

WeilModel model(long p, int f, const CoeffField& K) {
    const FqField& F = FqField::get(p, f);
    return WeilModel(SymplecticSpace(F, 1), AdditiveCharacter(F, K));
}

SubfieldTag quad(const CoeffField& K, long p) { return subfield_of_values(K, {gauss_sum(K, p)}); }

} // namespace

TEST_CASE("character fields of the even and odd parts, m = 1") {
    for (long p : {3L, 5L, 7L}) {
        CoeffField K = CoeffField::rational(p);
        WeilModel w = model(p, 1, K);
        for (Part part : {Part::even, Part::odd}) {
            CharacterField cf = character_field(w.rep(part));
            CHECK(cf.tag == quad(K, p));
        }
    }
    CoeffField K3 = CoeffField::rational(3);
    WeilModel w9 = model(3, 2, K3);
    for (Part part : {Part::even, Part::odd}) CHECK(character_field(w9.rep(part)).tag == SubfieldTag::prime(K3));
}

TEST_CASE("exhaustive and sampled traces give the same field") {
    CoeffField K = CoeffField::rational(5);
    WeilModel w = model(5, 1, K);
    MarkedRep r = w.rep(Part::odd);
    TraceProfile ex = trace_profile(r, true);
    CHECK(ex.exhaustive);
    CHECK(ex.elements % 120 == 0); // image of SL_2(F_5), possibly with the sign cocycle
    CHECK(subfield_of_values(K, ex.traces) == subfield_of_values(K, trace_profile(r, false, 200, 9).traces));
}

TEST_CASE("restriction of the Heisenberg rep to Q splits into the Galois orbit") {
    for (long p : {3L, 5L}) {
        CoeffField K = CoeffField::rational(p);
        WeilModel w = model(p, 1, K);
        OrbitDecomposition o = orbit_decomposition(w.heisenberg_rep(), SubfieldTag::prime(K));
        CHECK(o.m == 1);
        CHECK(o.n == static_cast<std::size_t>(p - 1));
        CHECK(o.blocks_match);
        CHECK(rationality_field(w.heisenberg_rep()) == SubfieldTag::whole(K));
    }
}

TEST_CASE("odd part at q = 5 over its character field has a quaternion endomorphism algebra") {
    CoeffField K = CoeffField::rational(5);
    WeilModel w = model(5, 1, K);
    EndAlgebra e = endomorphism_algebra(w.rep(Part::odd), quad(K, 5));
    CHECK(e.dim == 4);
    CHECK(!e.commutative);
    CHECK(e.center_dim == 1);
    CHECK(e.m == 2);
}

TEST_CASE("restriction of scalars doubles the dimension") {
    CoeffField K = CoeffField::rational(5);
    WeilModel w = model(5, 1, K);
    SubfieldTag R = quad(K, 5);
    MarkedRep r = restrict_scalars(w.rep(Part::even), R);
    CHECK(r.dim == 2 * w.part_dim(Part::even));
    for (const auto& m : r.images) CHECK(m.entries_in(R));
}
