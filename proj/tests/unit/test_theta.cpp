#include <doctest.h>

#include "weil/descent.hpp"
#include "weil/theta.hpp"

using namespace weil;

namespace {

WeilModel model(long p, int f, const CoeffField& K) {
    const FqField& F = FqField::get(p, f);
    return WeilModel(SymplecticSpace(F, 1), AdditiveCharacter(F, K));
}

} // namespace

TEST_CASE("theta lifts for the center pair are the even and odd parts") {
    for (long p : {3L, 5L}) {
        WeilModel w = model(p, 1, CoeffField::rational(p));
        CommutingPair pair = center_pair(w);
        CHECK(check_commuting(pair).all_passed());
        ThetaSuite t = theta_suite(pair, sign_characters(pair));
        CHECK(t.transcript.all_passed());
        CHECK(t.irr);
        CHECK(t.uni);
        CHECK(t.joint_projection);
        REQUIRE(t.lifts.size() == 2);
        std::size_t a = t.lifts[0].theta.dim, b = t.lifts[1].theta.dim;
        CHECK(a + b == static_cast<std::size_t>(p));
        CHECK(std::max(a, b) == static_cast<std::size_t>(p + 1) / 2);
        for (const auto& l : t.lifts) {
            CHECK(l.factorization_ok);
            CHECK(l.split.complementary);
            CHECK(l.split.stable);
        }
    }
}

TEST_CASE("theta lifts are Galois equivariant") {
    for (long p : {3L, 5L}) {
        WeilModel w = model(p, 1, CoeffField::rational(p));
        for (long u : w.field().galois_group())
            CHECK(theta_galois_equivariance(w.space(), w.psi(), u).all_passed());
    }
}

TEST_CASE("non-irreducible pi1 is rejected") {
    WeilModel w = model(3, 1, CoeffField::rational(3));
    CommutingPair pair = center_pair(w);
    MarkedRep two = restrict_scalars(character_rep(pair, {pair.field.from_int(1)}), SubfieldTag::prime(pair.field));
    two.field = pair.field; // two copies of the trivial character over K
    CHECK_THROWS_AS(isotypic_quotient(pair, two), Error);
}

TEST_CASE("scalar extension on the Heisenberg center over Q") {
    for (long p : {3L, 5L}) {
        WeilModel w = model(p, 1, CoeffField::rational(p));
        MarkedRep h = w.heisenberg_rep();
        const SubfieldTag Q = SubfieldTag::prime(h.field);
        MarkedRep hq = restrict_scalars(h, Q);
        MarkedRep c = h;
        c.generators = {"z"};
        c.images = {w.heisenberg(HeisElem{{0, 0}, 1})};
        MarkedRep cq = restrict_scalars(c, Q);
        CommutingPair pair{h.field, hq.dim, {"z"}, hq.generators, cq.images, hq.images};
        ScalarExtensionReport r = theta_scalar_extension_check(pair, Q, {h.field.zeta(1)});
        CHECK(r.transcript.all_passed());
        CHECK(r.pi1_dim == static_cast<std::size_t>(p - 1));
        CHECK(r.blocks.size() == static_cast<std::size_t>(p - 1));
        for (const auto& b : r.blocks) CHECK(b.theta_match);
    }
}

TEST_CASE("scalar extension on a descended pair over Q(sqrt(-7))") {
    WeilModel w = model(7, 1, CoeffField::rational(7));
    DescentResult r = fixed_points(descent_datum_weil(w));
    CommutingPair pair = transport(center_pair(w), r.basis, r.target);
    CHECK(check_commuting(pair).all_passed());
    for (long sgn : {1L, -1L}) {
        ScalarExtensionReport rep = theta_scalar_extension_check(pair, r.target, {pair.field.from_int(sgn)});
        CHECK(rep.transcript.all_passed());
        CHECK(rep.pi1_dim == 1);
    }
}
