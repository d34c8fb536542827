#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "weil/field.hpp"
#include "weil/finite_field.hpp"

using namespace weil;

TEST_CASE("cyclotomic moduli match the division oracle") {
    for (long n : {1, 3, 4, 5, 7, 8, 9, 12, 15, 20}) {
        CoeffField K = CoeffField::rational(n);
        std::vector<long> phi = oracle::cyclotomic(n);
        REQUIRE(K.modulus().size() == phi.size());
        for (std::size_t i = 0; i < phi.size(); ++i) CHECK(K.modulus()[i] == phi[i]);
        CHECK(K.degree() == euler_phi(n));
    }
    // frozen: Phi_5 = 1 + x + x^2 + x^3 + x^4
    CHECK(oracle::cyclotomic(5) == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(oracle::cyclotomic(12) == std::vector<long>{1, 0, -1, 0, 1});
}

TEST_CASE("fields are interned") {
    CHECK(CoeffField::rational(5) == CoeffField::rational(5));
    CHECK(CoeffField::rational(5) != CoeffField::rational(10));
    CHECK(CoeffField::modular(5, 11) != CoeffField::rational(5));
}

TEST_CASE("zeta has exact order n and field operations invert") {
    CoeffField K = CoeffField::rational(9);
    CycloNum z = K.zeta();
    CHECK(z.pow(9).is_one());
    CHECK(!z.pow(3).is_one());
    CycloNum x = z + K.from_int(3) * z.pow(4) - K.from_rational(mpq_class(1, 2));
    CHECK((x * x.inverse()).is_one());
    CHECK((x / x).is_one());
    CHECK_THROWS_AS(K.zero().inverse(), Error);
}

TEST_CASE("Gauss sums against a Legendre-symbol oracle") {
    for (long p : {3, 5, 7, 11, 13}) {
        CoeffField K = CoeffField::rational(p);
        CycloNum g = K.zero();
        for (long x = 1; x < p; ++x) g += K.from_int(oracle::legendre(x, p)) * K.zeta(x);
        CHECK(gauss_sum(K, p) == g);
        const long ps = (p % 4 == 1) ? p : -p;
        CHECK(g * g == K.from_int(ps));
        CHECK(p_star(p) == ps);
    }
}

TEST_CASE("Galois automorphisms are ring homomorphisms on seeded pairs") {
    std::mt19937_64 rng(7);
    CoeffField K = CoeffField::rational(20);
    auto rnd = [&] {
        std::vector<mpq_class> c(K.degree());
        for (auto& q : c) q = static_cast<long>(rng() % 11) - 5;
        return CycloNum(K, c);
    };
    for (int t = 0; t < 40; ++t) {
        CycloNum a = rnd(), b = rnd();
        for (long u : K.galois_group()) {
            CHECK(apply_aut(u, a + b) == apply_aut(u, a) + apply_aut(u, b));
            CHECK(apply_aut(u, a * b) == apply_aut(u, a) * apply_aut(u, b));
        }
    }
    CHECK(K.galois_group() == std::vector<long>{1, 3, 7, 9, 11, 13, 17, 19});
}

TEST_CASE("subfields of Q(zeta_20)") {
    CoeffField K = CoeffField::rational(20);
    CycloNum s5 = gauss_sum(K, 5);
    SubfieldTag q5 = subfield_of_values(K, {s5});
    CHECK(q5.degree() == 2);
    CHECK(subfield_name(q5) == "Q(sqrt(5))");
    CycloNum i = K.zeta(5);
    SubfieldTag both = subfield_of_values(K, {s5, s5 * i});
    CHECK(both.degree() == 4);
    CHECK(q5.is_subfield_of(both));
    CHECK(subfield_membership(s5, both));
    CHECK(!subfield_membership(i * s5, q5));
    // trace of sqrt(5) down to Q is 0, of 1 is the degree
    CHECK(relative_trace(s5, SubfieldTag::prime(K)).is_zero());
    CHECK(relative_trace(K.one(), SubfieldTag::prime(K)) == K.from_int(8));
    // the same subfield seen from Q(zeta_5)
    SubfieldTag small = subfield_of_values(CoeffField::rational(5), {gauss_sum(CoeffField::rational(5), 5)});
    CHECK(same_subfield(small, q5));
}

TEST_CASE("relative basis coordinates round-trip") {
    CoeffField K = CoeffField::rational(12);
    SubfieldTag base = subfield_of_values(K, {gauss_sum(K, 3)});
    RelativeBasis rb(base);
    CHECK(rb.size() == 2);
    CycloNum x = K.zeta() * K.from_int(5) + K.zeta(3);
    std::vector<CycloNum> c = rb.coords(x);
    for (const auto& y : c) CHECK(subfield_membership(y, base));
    CHECK(rb.combine(c) == x);
}

TEST_CASE("modular coefficient fields") {
    CoeffField K = CoeffField::modular(5, 11); // 11 = 1 mod 5 splits
    CHECK(K.degree() == 1);
    CoeffField L = CoeffField::modular(5, 7); // 7 has order 4 mod 5
    CHECK(L.degree() == 4);
    CHECK(L.galois_group() == std::vector<long>{1, 2, 3, 4});
    CycloNum z = L.zeta();
    CHECK(z.pow(5).is_one());
    CHECK(apply_aut(7, z) == z.pow(7)); // Frobenius
}

TEST_CASE("finite fields F_9 and F_25 satisfy the field axioms") {
    for (auto [p, f] : {std::pair{3L, 2}, std::pair{5L, 2}, std::pair{7L, 1}}) {
        const FqField& F = FqField::get(p, f);
        const long q = F.q();
        CHECK(F.order(F.generator()) == q - 1);
        for (Fq a = 0; a < q; ++a) {
            if (a) CHECK(F.mul(a, F.inv(a)) == F.one());
            CHECK(F.add(a, F.neg(a)) == F.zero());
            for (Fq b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
            }
        }
        long squares = 0;
        for (Fq a = 1; a < q; ++a)
            if (F.is_square(a)) {
                ++squares;
                auto r = F.sqrt(a);
                REQUIRE(r);
                CHECK(F.mul(*r, *r) == a);
            }
        CHECK(squares == (q - 1) / 2);
    }
}
