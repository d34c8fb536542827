#pragma once

// Quadratic Hilbert symbols over Q_v, quaternion ramification over Q, and the
// decision tables for Weil representation fields (p odd and p = 2).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "weil/field.hpp"

namespace weil {

// A place of Q: a prime v, or infinity (v = 0).
struct Place {
    long v = 0;

    static Place infinity() { return Place{0}; }
    static Place prime(long p);
    bool is_infinite() const { return v == 0; }
    std::string str() const;
    friend bool operator==(const Place& a, const Place& b) { return a.v == b.v; }
    friend bool operator<(const Place& a, const Place& b);
};

int hilbert_symbol(const mpq_class& a, const mpq_class& b, const Place& v);

// Solubility of a x^2 + b y^2 = z^2 by searching primitive solutions modulo
// v^k, k = 2 v(4ab) + 1, after reducing a, b to squarefree integers.
// Throws too_large when the search exceeds `max_steps`.
int hilbert_symbol_search(const mpq_class& a, const mpq_class& b, long v, long max_steps = 50000000);

// Places where the quaternion algebra (a, b)_Q ramifies, infinity last.
std::vector<Place> quaternion_ramification(const mpq_class& a, const mpq_class& b);

struct PartDecision {
    SubfieldTag character_field;
    SubfieldTag realisation_field;
    // Alternative realisation field when the table lists two.
    std::optional<SubfieldTag> alternative_field;
    int schur_index = 1;
};

struct SchurDecision {
    long p = 0;
    int f = 0;
    long q = 0;
    PartDecision even, odd;
};

// Fields as tags of Q(zeta_{4p}).
SchurDecision schur_index_decision(long p, int f);

enum class SquareClassGroupA { full, class3, class5, classMinus1, squaresOnly };
const char* square_class_name(SquareClassGroupA a);
std::optional<SquareClassGroupA> parse_square_class(const std::string& s);
// Representatives in {1, 3, 5, 7} mod 8 of the classes in A.
std::vector<long> square_class_members(SquareClassGroupA a);

struct P2Tables {
    SquareClassGroupA A;
    PartDecision even, odd; // tags of Q(zeta_8)
};

P2Tables p2_field_tables(SquareClassGroupA a);

// A = O_F^{x2} cap Z_2^x for F = Q_2, from the criterion that a 2-adic unit
// is a square iff it is 1 mod 8.
SquareClassGroupA compute_A_for_Q2();
bool is_2adic_unit_square(const mpz_class& u);

} // namespace weil
