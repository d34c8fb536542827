#include <doctest.h>

#include "io.hpp"

using namespace weil;

TEST_CASE("cyclotomic numbers and matrices round-trip through JSON") {
    CoeffField K = CoeffField::rational(5);
    CycloNum x = K.zeta() * K.from_rational(mpq_class(-3, 7)) + K.one();
    CHECK(io::cyclo_from_json(io::to_json(x)) == x);
    CHECK(io::cyclo_from_json(io::json::parse(io::to_json(x).dump())) == x);
    Mat m = Mat::scalar(x, 3);
    m(0, 2) = K.zeta(3);
    CHECK(io::mat_from_json(io::to_json(m)) == m);
    CoeffField L = CoeffField::modular(5, 7);
    CycloNum y = L.zeta(2) + L.from_int(3);
    CHECK(io::cyclo_from_json(io::to_json(y)) == y);
}

TEST_CASE("subfield tags and representations round-trip") {
    CoeffField K = CoeffField::rational(5);
    SubfieldTag t = subfield_of_values(K, {gauss_sum(K, 5)});
    CHECK(io::tag_from_json(io::to_json(t)) == t);
    const FqField& F = FqField::get(5, 1);
    WeilModel w(SymplecticSpace(F, 1), AdditiveCharacter(F, K));
    MarkedRep r = w.rep(Part::odd);
    MarkedRep back = io::rep_from_json(io::to_json(r));
    CHECK(back.dim == r.dim);
    CHECK(back.generators == r.generators);
    CHECK(back.images == r.images);
    CommutingPair pair = center_pair(w);
    CommutingPair pb = io::pair_from_json(io::to_json(pair));
    CHECK(pb.h1 == pair.h1);
    CHECK(pb.h2 == pair.h2);
}

TEST_CASE("malformed JSON is reported as config_invalid") {
    auto code = [](auto fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::identity_failure;
    };
    CHECK(code([] { io::cyclo_from_json(io::json{{"n", 5}}); }) == ErrorCode::config_invalid);
    CHECK(code([] { io::cyclo_from_json(io::json{{"n", 5}, {"coeffs", {"1/0x"}}}); }) == ErrorCode::config_invalid);
    CHECK(code([] { io::mat_from_json(io::json{{"rows", 2}, {"cols", 2}, {"entries", io::json::array()}}); }) ==
          ErrorCode::config_invalid);
}
