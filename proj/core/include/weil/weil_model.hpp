#pragma once

// Schroedinger model on C(Y) = functions Y -> K: Heisenberg representation,
// Weil operators on Sp(W) via the canonical factorisation, even/odd parts.

#include <map>
#include <random>
#include <optional>
#include <string>
#include <vector>

#include "weil/field.hpp"
#include "weil/matrix.hpp"
#include "weil/symplectic.hpp"

namespace weil {

// psi_c(x) = zeta_p^{Tr(c x)} with values in a coefficient field containing zeta_p.
struct AdditiveCharacter {
    const FqField* F = nullptr;
    CoeffField K;
    Fq c = 1;

    AdditiveCharacter() = default;
    AdditiveCharacter(const FqField& field, const CoeffField& coeffs, Fq twist = 1);
    CycloNum operator()(Fq x) const;
    long exponent(Fq x) const; // k with psi(x) = zeta_n^k
};

AdditiveCharacter char_twist(const AdditiveCharacter& psi, Fq gamma);
AdditiveCharacter char_galois(long u, const AdditiveCharacter& psi);

// Coefficient field for the model: Q(zeta_p) or F_l[zeta_p].
CoeffField default_coeff_field(long p, long ell = 0);

enum class RepLabel { heisenberg, weil, weil_even, weil_odd, derived };
const char* label_name(RepLabel l);

struct MarkedRep {
    CoeffField field;
    SubfieldTag defined_over;
    std::size_t dim = 0;
    std::vector<std::string> generators;
    std::vector<Mat> images;
    RepLabel label = RepLabel::derived;

    MarkedRep galois_conjugate(long u) const; // entrywise sigma_u
    bool images_invertible() const;
};

enum class Part { full, even, odd };
const char* part_name(Part p);

class WeilModel {
public:
    WeilModel(const SymplecticSpace& space, const AdditiveCharacter& psi);

    const SymplecticSpace& space() const { return space_; }
    const AdditiveCharacter& psi() const { return psi_; }
    const CoeffField& field() const { return psi_.K; }
    std::size_t dim() const { return points_.size(); }

    const std::vector<std::vector<Fq>>& points() const { return points_; }
    std::size_t point_index(const std::vector<Fq>& y) const;

    Mat heisenberg(const HeisElem& h) const;
    MarkedRep heisenberg_rep() const;

    const Mat& token_image(const SpToken& t) const;
    Mat word_image(const GeneratorWord& w) const;
    // Product of token images along the canonical factorisation word.
    Mat omega(const FqMat& g) const;
    // Image of w(c) from the kernel formula with the Weil-index normalisation.
    Mat w_formula(const FqMat& c) const;
    // sum_x psi(Q(x)) for the quadratic form Q(x) = -1/2 sum_i x_i^2 scaled by s.
    CycloNum weil_sum(Fq s) const;

    MarkedRep rep(Part part = Part::full) const;
    Mat restrict_to(const Mat& a, Part part) const;
    std::size_t part_dim(Part part) const;
    Mat part_basis(Part part) const; // columns in C(Y)
    Mat parity() const;              // f -> f(-y)

    // lambda(g, h) = omega(g) omega(h) omega(gh)^{-1}; throws unless it is a scalar.
    CycloNum cocycle(const FqMat& g, const FqMat& h) const;

private:
    SymplecticSpace space_;
    AdditiveCharacter psi_;
    std::vector<std::vector<Fq>> points_;
    std::vector<std::size_t> neg_index_;
    std::vector<std::size_t> even_reps_, odd_reps_;
    mutable std::map<std::string, Mat> cache_;
};

// Identity check results: name -> passed.
struct CheckList {
    std::vector<std::pair<std::string, bool>> items;
    void add(const std::string& name, bool ok) { items.emplace_back(name, ok); }
    bool all_passed() const;
};

CheckList weil_twist_check(const SymplecticSpace& space, const AdditiveCharacter& psi, Fq gamma);
CheckList intertwining_check(const WeilModel& w);
CheckList semilinearity_check(const WeilModel& w, long u, std::uint64_t seed, int random_words);

struct CocycleCert {
    std::size_t pairs = 0;
    std::size_t plus = 0, minus = 0;
    bool exhaustive = false;
    bool ok() const { return plus + minus == pairs; }
};

CocycleCert cocycle_certificate(const WeilModel& w, bool exhaustive, std::size_t samples, std::uint64_t seed,
                                std::uint64_t bound = 100000);

// Deterministic random symplectic element: a random word in the generators.
FqMat random_sp_element(const SymplecticSpace& s, std::mt19937_64& rng, int length = 12);

} // namespace weil
