#include "weil/local_symbols.hpp"

#include <algorithm>
#include <set>

namespace weil {

namespace {

// a in Q^x as an integer in the same square class.
mpz_class integral_class(const mpq_class& a) {
    if (sgn(a) == 0) throw Error(ErrorCode::zero_input, "Hilbert symbol of zero");
    return a.get_num() * a.get_den();
}

long valuation(mpz_class& x, long p) {
    long k = 0;
    mpz_class pp = p;
    while (mpz_divisible_p(x.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
        ++k;
    }
    return k;
}

long mod_small(const mpz_class& x, long m) {
    mpz_class r;
    mpz_class mm = m;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
    return r.get_si();
}

int legendre_mpz(const mpz_class& u, long p) {
    mpz_class pp = p;
    return mpz_legendre(u.get_mpz_t(), pp.get_mpz_t());
}

// Strip square factors of p, keep the sign.
mpz_class squarefree_at(mpz_class x, long p) {
    mpz_class p2 = p * p;
    while (mpz_divisible_p(x.get_mpz_t(), p2.get_mpz_t())) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), p2.get_mpz_t());
    return x;
}

std::set<long> prime_divisors(mpz_class x) {
    std::set<long> out;
    x = abs(x);
    for (long p = 2; x > 1; ++p) {
        mpz_class pp = p;
        if (pp * pp > x) {
            if (!x.fits_slong_p()) throw Error(ErrorCode::too_large, "prime factor beyond machine range");
            out.insert(x.get_si());
            break;
        }
        if (mpz_divisible_p(x.get_mpz_t(), pp.get_mpz_t())) {
            out.insert(p);
            while (mpz_divisible_p(x.get_mpz_t(), pp.get_mpz_t())) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pp.get_mpz_t());
        }
    }
    return out;
}

} // namespace

Place Place::prime(long p) {
    if (!is_prime(p)) throw Error(ErrorCode::config_invalid, "place must be a prime or infinity");
    return Place{p};
}

std::string Place::str() const { return is_infinite() ? "inf" : std::to_string(v); }

bool operator<(const Place& a, const Place& b) {
    // finite places in increasing order, then infinity
    if (a.is_infinite() != b.is_infinite()) return b.is_infinite();
    return a.v < b.v;
}

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v) {
    mpz_class x = integral_class(a), y = integral_class(b);
    if (v.is_infinite()) return (x < 0 && y < 0) ? -1 : 1;
    const long p = v.v;
    long alpha = valuation(x, p), beta = valuation(y, p);
    if (p == 2) {
        long u = mod_small(x, 8), w = mod_small(y, 8);
        auto eps = [](long t) { return ((t - 1) / 2) & 1; };
        auto omega = [](long t) { return ((t * t - 1) / 8) & 1; };
        long e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
        return (e & 1) ? -1 : 1;
    }
    long e = (alpha * beta * ((p - 1) / 2)) & 1;
    int s = (e ? -1 : 1);
    if (beta & 1) s *= legendre_mpz(x, p);
    if (alpha & 1) s *= legendre_mpz(y, p);
    return s;
}

int hilbert_symbol_search(const mpq_class& a, const mpq_class& b, long v, long max_steps) {
    if (!is_prime(v)) throw Error(ErrorCode::config_invalid, "search needs a prime place");
    mpz_class x = squarefree_at(integral_class(a), v), y = squarefree_at(integral_class(b), v);
    mpz_class t = 4 * x * y;
    long k = 2 * valuation(t, v) + 1;
    long mod = 1;
    for (long i = 0; i < k; ++i) mod *= v;
    if (2 * mod > max_steps) throw Error(ErrorCode::too_large, "search modulus too large");
    std::vector<char> square(mod, 0);
    for (long z = 0; z < mod; ++z) square[static_cast<long>(static_cast<__int128>(z) * z % mod)] = 1;
    const long am = mod_small(x, mod), bm = mod_small(y, mod);
    auto value = [&](long s, long t2) {
        __int128 r = static_cast<__int128>(am) * s % mod * s + static_cast<__int128>(bm) * t2 % mod * t2;
        return static_cast<long>(r % mod);
    };
    // primitive triples have x or y a unit; scale that coordinate to 1
    for (long t2 = 0; t2 < mod; ++t2)
        if (square[value(1, t2)]) return 1;
    for (long s = 0; s < mod; s += v)
        if (square[value(s, 1)]) return 1;
    return -1;
}

std::vector<Place> quaternion_ramification(const mpq_class& a, const mpq_class& b) {
    mpz_class x = integral_class(a), y = integral_class(b);
    std::set<long> primes = prime_divisors(x);
    for (long p : prime_divisors(y)) primes.insert(p);
    primes.insert(2);
    std::vector<Place> out;
    for (long p : primes)
        if (hilbert_symbol(a, b, Place{p}) == -1) out.push_back(Place{p});
    if (hilbert_symbol(a, b, Place::infinity()) == -1) out.push_back(Place::infinity());
    return out;
}

SchurDecision schur_index_decision(long p, int f) {
    if (p == 2 || !is_prime(p)) throw Error(ErrorCode::config_invalid, "p must be an odd prime");
    if (f < 1) throw Error(ErrorCode::config_invalid, "f must be positive");
    const CoeffField K = CoeffField::rational(4 * p);
    const CycloNum root_pstar = gauss_sum(K, p);
    const CycloNum i = K.zeta(p);
    const CycloNum root_minus_p = p % 4 == 1 ? root_pstar * i : root_pstar;
    SchurDecision d;
    d.p = p;
    d.f = f;
    d.q = 1;
    for (int k = 0; k < f; ++k) d.q *= p;
    const bool odd_power = f % 2 == 1;
    SubfieldTag chr = odd_power ? subfield_of_values(K, {root_pstar}) : SubfieldTag::prime(K);
    d.even = PartDecision{chr, chr, std::nullopt, 1};
    d.odd.character_field = chr;
    if (odd_power && p % 4 == 3) {
        d.odd.realisation_field = chr;
        d.odd.schur_index = 1;
    } else {
        std::vector<CycloNum> gens{root_minus_p};
        if (odd_power) gens.push_back(root_pstar);
        d.odd.realisation_field = subfield_of_values(K, gens);
        d.odd.schur_index = 2;
    }
    return d;
}

const char* square_class_name(SquareClassGroupA a) {
    switch (a) {
    case SquareClassGroupA::full: return "full";
    case SquareClassGroupA::class3: return "class3";
    case SquareClassGroupA::class5: return "class5";
    case SquareClassGroupA::classMinus1: return "classMinus1";
    case SquareClassGroupA::squaresOnly: return "squaresOnly";
    }
    return "full";
}

std::optional<SquareClassGroupA> parse_square_class(const std::string& s) {
    for (auto a : {SquareClassGroupA::full, SquareClassGroupA::class3, SquareClassGroupA::class5,
                   SquareClassGroupA::classMinus1, SquareClassGroupA::squaresOnly})
        if (s == square_class_name(a)) return a;
    return std::nullopt;
}

std::vector<long> square_class_members(SquareClassGroupA a) {
    switch (a) {
    case SquareClassGroupA::full: return {1, 3, 5, 7};
    case SquareClassGroupA::class3: return {1, 3};
    case SquareClassGroupA::class5: return {1, 5};
    case SquareClassGroupA::classMinus1: return {1, 7};
    case SquareClassGroupA::squaresOnly: return {1};
    }
    return {1};
}

P2Tables p2_field_tables(SquareClassGroupA a) {
    const CoeffField K = CoeffField::rational(8);
    // the character field of both parts is the fixed field of A acting through zeta_8 -> zeta_8^u
    const SubfieldTag chr(K, square_class_members(a));
    const CycloNum i = K.zeta(2);
    const CycloNum sqrt_m2 = K.zeta(1) + K.zeta(3);
    P2Tables t;
    t.A = a;
    t.even = PartDecision{chr, chr, std::nullopt, 1};
    t.odd.character_field = chr;
    switch (a) {
    case SquareClassGroupA::full:
        t.odd.realisation_field = subfield_of_values(K, {sqrt_m2});
        t.odd.alternative_field = subfield_of_values(K, {i});
        t.odd.schur_index = 2;
        break;
    case SquareClassGroupA::classMinus1:
        t.odd.realisation_field = SubfieldTag::whole(K);
        t.odd.schur_index = 2;
        break;
    default:
        t.odd.realisation_field = chr;
        t.odd.schur_index = 1;
        break;
    }
    return t;
}

bool is_2adic_unit_square(const mpz_class& u) {
    if (mpz_even_p(u.get_mpz_t())) return false;
    // odd squares modulo 8, enumerated
    long r = mod_small(u, 8);
    for (long x = 1; x < 8; x += 2)
        if (x * x % 8 == r) return true;
    return false;
}

SquareClassGroupA compute_A_for_Q2() {
    std::vector<long> members;
    for (long u : {1, 3, 5, 7})
        if (is_2adic_unit_square(u)) members.push_back(u);
    for (auto a : {SquareClassGroupA::full, SquareClassGroupA::class3, SquareClassGroupA::class5,
                   SquareClassGroupA::classMinus1, SquareClassGroupA::squaresOnly})
        if (square_class_members(a) == members) return a;
    throw Error(ErrorCode::identity_failure, "square classes do not form a listed subgroup");
}

} // namespace weil
