#pragma once

// Character and rationality fields, isomorphism testing, restriction of
// scalars, endomorphism algebras and scalar-extension blocks for exact
// matrix representations of finite groups.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weil/field.hpp"
#include "weil/matrix.hpp"
#include "weil/weil_model.hpp"

namespace weil {

struct TraceProfile {
    std::vector<CycloNum> traces;
    bool exhaustive = false;
    std::size_t elements = 0; // size of the generated matrix group when exhaustive
};

// Exhaustive mode closes the matrix group generated by the images (throws
// too_large past `bound` elements); sampled mode uses seeded random words.
TraceProfile trace_profile(const MarkedRep& rep, bool exhaustive, std::size_t samples = 400, std::uint64_t seed = 1,
                           std::size_t bound = 200000);

// All matrices in the group generated by `gens`, in discovery order.
std::vector<Mat> matrix_group_closure(const std::vector<Mat>& gens, std::size_t bound);

// Basis of {T : T a_i = b_i T for all generators}, in reduced echelon form.
std::vector<Mat> intertwiners(const MarkedRep& a, const MarkedRep& b);
// An invertible intertwiner from a to b, if one exists.
std::optional<Mat> iso_test(const MarkedRep& a, const MarkedRep& b);

// {u : conj_u(rep) is isomorphic to rep} as a subfield tag.
SubfieldTag rationality_field(const MarkedRep& rep);

struct CharacterField {
    SubfieldTag tag;
    std::string method; // "exhaustive-traces", "sampled-traces+iso", "iso"
    std::size_t elements = 0;
};

// Exhaustive traces when the generated group has at most `bound` elements,
// otherwise sampled traces certified by iso_test. Modular fields use iso_test.
CharacterField character_field(const MarkedRep& rep, std::size_t bound = 200000, std::uint64_t seed = 1);

// The rep viewed over R: dimension multiplied by the degree of its field of
// definition over R, entries in R.
MarkedRep restrict_scalars(const MarkedRep& rep, const SubfieldTag& R);

// An element of End_R(V) for V over K: sum over sigma of T_sigma o sigma.
struct SemilinearMap {
    std::map<long, Mat> parts;
};

struct EndAlgebra {
    SubfieldTag base;
    std::vector<SemilinearMap> basis; // R-basis
    // basis[i] basis[j] = sum_k structure[i][j][k] basis[k], coefficients in R
    std::vector<std::vector<std::vector<CycloNum>>> structure;
    std::vector<std::vector<CycloNum>> center; // coordinates of a center basis
    std::vector<long> inner;                   // {sigma : conj_sigma(V) iso V}
    std::size_t dim = 0, center_dim = 0, m = 0;
    bool commutative = false;
    std::optional<bool> center_is_field;
    std::optional<bool> is_division;
    std::string division_certificate;
};

// End of V|_R for V over the whole coefficient field K, computed as
// the sum over sigma in Gal(K/R) of Hom(conj_sigma V, V) sigma.
EndAlgebra endomorphism_algebra(const MarkedRep& rep, const SubfieldTag& R);

SemilinearMap semilinear_product(const SemilinearMap& x, const SemilinearMap& y);

struct OrbitBlock {
    long sigma = 1;       // eigenvalue sigma(zeta) of multiplication by zeta
    std::size_t dim = 0;
    long conjugate = 1;   // u with the block isomorphic to conj_u(V)
    std::size_t iso_class = 0;
};

struct OrbitDecomposition {
    std::size_t m = 0, n = 0;
    std::vector<OrbitBlock> blocks;
    bool blocks_match = false; // every block matched and class sizes equal m
};

// Splits (V|_R) (x)_R K with the Lagrange idempotents of multiplication by zeta
// and matches each block against the Galois conjugates of V.
OrbitDecomposition orbit_decomposition(const MarkedRep& rep, const SubfieldTag& R);

// Restriction of a representation to an invariant subspace spanned by the columns of B.
MarkedRep restrict_to_subspace(const MarkedRep& rep, const Mat& B);

// Column basis of the image of a matrix, in pivot order.
Mat column_space(const Mat& a);

} // namespace weil
