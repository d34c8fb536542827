#include <doctest.h>

#include "weil/matrix.hpp"

using namespace weil;

namespace {

Mat from_ints(const CoeffField& K, std::size_t r, std::size_t c, std::vector<long> v) {
    Mat m(K, r, c);
    for (std::size_t i = 0; i < r * c; ++i) m(i / c, i % c) = K.from_int(v[i]);
    return m;
}

} // namespace

TEST_CASE("rank and nullspace of a frozen rational matrix") {
    CoeffField Q = CoeffField::rational(1);
    // third row = first + second
    Mat a = from_ints(Q, 3, 4, {1, 2, 3, 4, 2, 0, 1, -1, 3, 2, 4, 3});
    CHECK(rank(a) == 2);
    std::vector<Vec> ns = nullspace(a);
    CHECK(ns.size() == 2);
    for (const auto& v : ns)
        for (const auto& x : a * v) CHECK(x.is_zero());
}

TEST_CASE("inverse and solve over Q(zeta_3)") {
    CoeffField K = CoeffField::rational(3);
    Mat a(K, 2, 2);
    a(0, 0) = K.zeta();
    a(0, 1) = K.one();
    a(1, 0) = K.from_int(2);
    a(1, 1) = K.zeta(2);
    CHECK((a * a.inverse()).is_identity());
    Vec b{K.one(), K.zero()}, x;
    REQUIRE(solve(a, b, x));
    CHECK(a * x == b);
    Mat s = from_ints(K, 2, 2, {1, 2, 2, 4});
    Vec y;
    CHECK(!solve(s, Vec{K.one(), K.zero()}, y));
    CHECK_THROWS_AS(s.inverse(), Error);
}

TEST_CASE("incremental system matches dense nullspace") {
    CoeffField Q = CoeffField::rational(1);
    LinearSystem sys(Q, 3);
    CHECK(sys.add_dense_row({Q.one(), Q.one(), Q.zero()}));
    CHECK(!sys.add_dense_row({Q.from_int(2), Q.from_int(2), Q.zero()}));
    CHECK(sys.rank() == 1);
    CHECK(sys.nullspace().size() == 2);
}

TEST_CASE("Galois action on matrices is entrywise") {
    CoeffField K = CoeffField::rational(5);
    Mat a = Mat::scalar(K.zeta(), 2);
    CHECK(a.apply_aut(2) == Mat::scalar(K.zeta(2), 2));
    CHECK(a.pow(5).is_identity());
    CycloNum c;
    CHECK(a.is_scalar(&c));
    CHECK(c == K.zeta());
}
