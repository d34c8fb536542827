#include <doctest.h>

#include "weil/descent.hpp"

using namespace weil;

namespace {

WeilModel model(long p, int f, const CoeffField& K) {
    const FqField& F = FqField::get(p, f);
    return WeilModel(SymplecticSpace(F, 1), AdditiveCharacter(F, K));
}

// Independent round trip: the descended model is isomorphic to the original.
bool round_trip(const MarkedRep& model, const MarkedRep& original) {
    return iso_test(model, original).has_value();
}

} // namespace

TEST_CASE("q = 9 even part descends to Q") {
    CoeffField K = CoeffField::rational(3);
    WeilModel w = model(3, 2, K);
    DescentDatum d = descent_datum_even(w);
    CHECK(certify(d).all_passed());
    DescentResult r = fixed_points(d);
    CHECK(r.transcript.all_passed());
    CHECK(r.target == SubfieldTag::prime(K));
    CHECK(r.model.dim == 5);
    for (const auto& m : r.model.images) CHECK(m.entries_in(SubfieldTag::prime(K)));
    CHECK(round_trip(r.model, w.rep(Part::even)));
}

TEST_CASE("q = 7 full Weil representation descends to Q(sqrt(-7))") {
    CoeffField K = CoeffField::rational(7);
    WeilModel w = model(7, 1, K);
    DescentResult r = fixed_points(descent_datum_weil(w));
    CHECK(r.transcript.all_passed());
    CHECK(r.target == subfield_of_values(K, {gauss_sum(K, 7)}));
    CHECK(round_trip(r.model, w.rep(Part::full)));
}

TEST_CASE("odd parts realised over the tabulated fields") {
    struct Row {
        long p;
        int f;
        const char* field;
        int m;
    };
    for (Row row : {Row{3, 1, "Q(sqrt(-3))", 1}, Row{5, 1, "Q(sqrt(5),sqrt(-5))", 2}, Row{7, 1, "Q(sqrt(-7))", 1},
                    Row{3, 2, "Q(sqrt(-3))", 2}}) {
        CAPTURE(row.p);
        CAPTURE(row.f);
        SymplecticSpace s(FqField::get(row.p, row.f), 1);
        OddRealisation o = realise_odd(s);
        CHECK(o.result.transcript.all_passed());
        CHECK(subfield_name(o.target) == row.field);
        CHECK(o.schur_index == row.m);
        if (o.lambda) CHECK(tower_norm(make_tower(SubfieldTag::whole(o.target.field()), o.target, o.generator), *o.lambda) ==
                            o.target.field().from_int(-1));
        WeilModel w = model(row.p, row.f, odd_ambient_field(row.p, 0));
        CHECK(round_trip(o.result.model, w.rep(Part::odd)));
    }
}

TEST_CASE("bounded norm search") {
    CoeffField K = CoeffField::rational(5);
    SubfieldTag Q = SubfieldTag::prime(K);
    SubfieldTag Q5 = subfield_of_values(K, {gauss_sum(K, 5)});
    // N(a + b sqrt 5) = a^2 - 5 b^2 = -1 is solvable, e.g. 2 + sqrt 5
    NormSearch hit = search_norm_minus_one(make_tower(Q5, Q, 2), 5);
    REQUIRE(hit.lambda);
    CHECK(tower_norm(make_tower(Q5, Q, 2), *hit.lambda) == K.from_int(-1));
    // Q(i) / Q: a^2 + b^2 > 0, so the search runs out
    CoeffField K4 = CoeffField::rational(4);
    NormSearch miss = search_norm_minus_one(make_tower(SubfieldTag::whole(K4), SubfieldTag::prime(K4), 3), 6);
    CHECK(!miss.lambda);
    CHECK(miss.exhausted);
    CHECK_THROWS_AS(solve_norm_minus_one(make_tower(SubfieldTag::whole(K4), SubfieldTag::prime(K4), 3), 3), Error);
}

TEST_CASE("CM obstruction for the odd part") {
    for (auto [p, f] : {std::pair{5L, 1}, std::pair{3L, 2}}) {
        ObstructionReport r = odd_obstruction_check(SymplecticSpace(FqField::get(p, f), 1), 4);
        CHECK(r.transcript.all_passed());
        CHECK(r.power_is_minus_id);
        CHECK(r.cm);
        CHECK(!r.search.lambda);
        CHECK(r.obstruction);
    }
    ObstructionReport r7 = odd_obstruction_check(SymplecticSpace(FqField::get(7, 1), 1), 4);
    CHECK(!r7.obstruction);
}

TEST_CASE("modular realisation, l = 7, p = 5") {
    OddRealisation o = realise_odd(SymplecticSpace(FqField::get(5, 1), 1), 7);
    CHECK(o.result.transcript.all_passed());
    CHECK(o.target.field().characteristic() == 7);
    CHECK(o.target == o.character_field);
}

TEST_CASE("a broken descent datum is rejected") {
    CoeffField K = CoeffField::rational(7);
    WeilModel w = model(7, 1, K);
    DescentDatum d = descent_datum_weil(w);
    REQUIRE(d.group.size() > 1);
    d.matrices[1] = d.matrices[1].scaled(K.from_int(2));
    CHECK(!certify(d).all_passed());
}
