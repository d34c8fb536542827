#pragma once

// Semilinear descent data r_sigma(v) = A_sigma sigma(v), fixed points, norm
// equations, and the explicit descents of the Weil representation and its
// even and odd parts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weil/field.hpp"
#include "weil/matrix.hpp"
#include "weil/rationality.hpp"
#include "weil/weil_model.hpp"

namespace weil {

struct DescentDatum {
    MarkedRep rep;              // over the whole coefficient field
    SubfieldTag target;         // fixed field of the acting group
    std::vector<long> group;    // exponents, sorted, closed under products
    std::vector<Mat> matrices;  // A_sigma, aligned with `group`

    const Mat& at(long sigma) const;
};

// Cocycle A_{st} = A_s s(A_t), equivariance A_s s(G) = G A_s, and target = fixed field of the group.
CheckList certify(const DescentDatum& d);

struct DescentResult {
    SubfieldTag target;
    Mat basis;       // columns: a target-rational basis of the fixed space
    MarkedRep model; // generator images B^{-1} G B, entries in the target
    CheckList transcript;
};

DescentResult fixed_points(const DescentDatum& d);

// Odd-order part of F_p^x acting through sigma_u, with gamma the odd-order
// element satisfying gamma^2 u = 1.
DescentDatum descent_datum_weil(const WeilModel& w);
// Squares in F_p^x (seen inside F_q), least gamma with gamma^2 u = 1, on the even part.
DescentDatum descent_datum_even(const WeilModel& w);

// Extend a datum on a cyclic group from its generator: A_{g^{k+1}} = A_g g(A_{g^k}).
DescentDatum cyclic_datum(const MarkedRep& rep, const SubfieldTag& target, long g, const Mat& a_g);

// Cyclic tower top / base with Gal(top / base) generated by sigma_gen.
struct NormTower {
    SubfieldTag top;
    SubfieldTag base;
    long generator = 1;
    int degree() const;
};

NormTower make_tower(const SubfieldTag& top, const SubfieldTag& base, long generator);
CycloNum tower_norm(const NormTower& t, const CycloNum& x);

struct NormSearch {
    std::optional<CycloNum> lambda;
    std::size_t candidates = 0;
    long shell_reached = 0;  // L1 weight of the last shell entered (rational towers)
    bool exhausted = false;  // every candidate within the bound was examined
};

// Bounded search for N_{top/base}(lambda) = -1. Rational towers: lambda = a / d
// with a an integer combination of an integral basis of the top field,
// coefficients |a_i| <= bound, in shells of increasing L1 weight, and d <= bound.
// Modular towers: all elements in a fixed order.
NormSearch search_norm_minus_one(const NormTower& t, long bound, std::size_t max_candidates = 5000000);
// Throws not_found_within_bound when the search fails.
CycloNum solve_norm_minus_one(const NormTower& t, long bound, std::size_t max_candidates = 5000000);

struct ObstructionReport {
    long p = 0;
    int f = 0;
    int k = 0, a = 0, k_a = 0;
    long tau = 1;                // exponent of tau on Q(zeta_p)
    bool power_is_minus_id = false;
    bool cm = false;             // L is CM and tau acts on it as complex conjugation
    SubfieldTag L, L0;           // CM field and its totally real subfield
    NormSearch search;           // bounded search on L / L0
    bool twisted_algebra_ok = false;
    std::size_t twisted_algebra_dim = 0;
    bool obstruction = false;
    CheckList transcript;
};

ObstructionReport odd_obstruction_check(const SymplecticSpace& s, long search_bound = 20,
                                        std::size_t max_candidates = 5000000);

struct OddRealisation {
    SubfieldTag character_field;
    SubfieldTag target;
    long generator = 1;             // generator of Gal(K / target)
    std::optional<CycloNum> lambda; // norm -1 element used to fix the cocycle
    DescentResult result;
    int schur_index = 1;
};

// ell = 0: rational coefficients. Otherwise F_ell[zeta_p].
OddRealisation realise_odd(const SymplecticSpace& s, long ell = 0, long norm_bound = 20);

// Coefficient field used by realise_odd for (p, ell).
CoeffField odd_ambient_field(long p, long ell);

} // namespace weil
