#pragma once

// Isotypic quotients and theta lifts for two commuting finite groups acting
// on one space, with scalar-extension and Galois-equivariance checks.

#include <optional>
#include <string>
#include <vector>

#include "weil/rationality.hpp"
#include "weil/weil_model.hpp"

namespace weil {

struct CommutingPair {
    CoeffField field;
    std::size_t dim = 0;
    std::vector<std::string> h1_names, h2_names;
    std::vector<Mat> h1, h2;

    MarkedRep h1_rep() const;
    MarkedRep h2_rep() const;
};

// Every H1 image commutes with every H2 image; all images invertible.
CheckList check_commuting(const CommutingPair& pair);

// H1 = {1, P} with P f(y) = f(-y), which is omega(m(-I)) up to the sign chi(-1)^m;
// H2 = the images of the generators of Sp(W).
CommutingPair center_pair(const WeilModel& w);
// Same pair transported to a descended model with basis B: matrices B^{-1} X B.
CommutingPair transport(const CommutingPair& pair, const Mat& basis, const SubfieldTag& over);

// One-dimensional rep of H1 with the given generator values.
MarkedRep character_rep(const CommutingPair& pair, const std::vector<CycloNum>& values);
// Trivial and sign characters of H1 = {1, P}.
std::vector<MarkedRep> sign_characters(const CommutingPair& pair);

struct IsotypicSplit {
    Mat component; // columns: V^{pi1}, mapping isomorphically onto the quotient V_{pi1}
    Mat kernel;    // columns: V[pi1], the intersection of kernels of H1-maps V -> pi1
    std::size_t component_dim = 0, kernel_dim = 0;
    bool complementary = false; // V = component + kernel, direct
    bool stable = false;        // both pieces stable under H1 and H2
};

// Throws not_irreducible unless End_{H1}(pi1) = K.
IsotypicSplit isotypic_quotient(const CommutingPair& pair, const MarkedRep& pi1);

struct ThetaLift {
    MarkedRep pi1;
    std::size_t d1_dim = 1;          // dim over K of End(pi1)
    std::vector<Mat> hom_basis;      // basis T_i of Hom_{H1}(pi1, V)
    MarkedRep theta;                 // H2 acting on Hom_{H1}(pi1, V) by post-composition
    IsotypicSplit split;
    bool factorization_ok = false;   // T (x) v -> T v is an H1 x H2 iso onto V^{pi1}
    bool irreducible = false;        // theta is 0 or has commutant K
};

ThetaLift theta_lift(const CommutingPair& pair, const MarkedRep& pi1);

struct ThetaSuite {
    std::vector<ThetaLift> lifts;
    bool irr = false;           // every lift is 0 or irreducible
    bool uni = false;           // nonzero lifts of distinct pi1 are non-isomorphic
    bool joint_projection = false;
    CheckList transcript;
};

// `irreps` must be pairwise non-isomorphic irreducible reps of H1.
ThetaSuite theta_suite(const CommutingPair& pair, const std::vector<MarkedRep>& irreps);

// For each pi1 in {trivial, sign}: sigma(Theta_psi(pi1)) is isomorphic to Theta_{psi^sigma}(sigma(pi1)).
CheckList theta_galois_equivariance(const SymplecticSpace& s, const AdditiveCharacter& psi, long sigma);

struct ScalarExtensionBlock {
    long w = 1;                   // embedding of E1 over R, as an automorphism exponent
    std::size_t isotypic_dim = 0; // dim of (V (x) K)_{w chi}
    std::size_t theta_dim = 0;    // dim of Theta(w chi)
    bool theta_match = false;     // eigenblock of Theta(pi1) iso to Theta(w chi)
};

struct ScalarExtensionReport {
    SubfieldTag R, E1;
    std::size_t pi1_dim = 0;      // [E1 : R]
    std::size_t isotypic_dim = 0; // dim of V_{pi1}, computed over R
    std::size_t theta_dim = 0;    // dim of Theta(pi1) over K
    std::vector<ScalarExtensionBlock> blocks;
    CheckList transcript;
};

// H1 abelian, pair matrices with entries in R, chi a character of H1 with values in K.
// pi1 is chi viewed over R (restriction of scalars from E1 = R(chi)); checks
// V_{pi1} (x) K = sum_w V_{w chi} and Theta(pi1) (x)_{E1, w} K = Theta(w chi).
ScalarExtensionReport theta_scalar_extension_check(const CommutingPair& pair, const SubfieldTag& R,
                                                   const std::vector<CycloNum>& chi_values);

} // namespace weil
