#pragma once

// Symplectic space W = X + Y over F_q with basis (e_1..e_m, f_1..f_m) and
// Gram matrix J = [[0, I], [-I, 0]]; Sp(W), the Heisenberg group, and
// factorisation into Siegel-parabolic and Weyl tokens.

#include <cstdint>
#include <string>
#include <vector>

#include "weil/finite_field.hpp"

namespace weil {

class FqMat {
public:
    FqMat() = default;
    FqMat(const FqField& F, std::size_t rows, std::size_t cols);
    static FqMat identity(const FqField& F, std::size_t n);
    static FqMat scalar(const FqField& F, std::size_t n, Fq c);

    const FqField& field() const { return *F_; }
    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Fq& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    Fq operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    const std::vector<Fq>& data() const { return a_; }

    FqMat operator*(const FqMat& o) const;
    std::vector<Fq> operator*(const std::vector<Fq>& v) const;
    FqMat operator+(const FqMat& o) const;
    FqMat operator-() const;
    FqMat scaled(Fq s) const;
    FqMat transpose() const;
    FqMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const FqMat& b);
    bool invertible() const;
    FqMat inverse() const;
    Fq det() const;
    bool is_identity() const;
    bool is_zero() const;
    bool is_symmetric() const;

    friend bool operator==(const FqMat& a, const FqMat& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }
    friend bool operator!=(const FqMat& a, const FqMat& b) { return !(a == b); }
    friend bool operator<(const FqMat& a, const FqMat& b) { return a.a_ < b.a_; }
    std::string str() const;

private:
    const FqField* F_ = nullptr;
    std::size_t r_ = 0, c_ = 0;
    std::vector<Fq> a_;
};

struct SymplecticSpace {
    const FqField* F;
    int m;

    SymplecticSpace(const FqField& field, int half_dim) : F(&field), m(half_dim) {}
    int dim() const { return 2 * m; }
    FqMat gram() const;
    Fq form(const std::vector<Fq>& u, const std::vector<Fq>& v) const;
    bool is_symplectic(const FqMat& g) const;
    // |Sp(2m, F_q)| as a double-free exact count; saturates at uint64 max.
    std::uint64_t group_order() const;
};

// m(a) = diag(a, a^{-T}), n(b) = [[I, b], [0, I]], W0 = [[0, -I], [I, 0]].
FqMat sp_m(const SymplecticSpace& s, const FqMat& a);
FqMat sp_n(const SymplecticSpace& s, const FqMat& b);
FqMat sp_w0(const SymplecticSpace& s);
// w(c): the element with w|_X = c, namely [[0, -c^{-T}], [c, 0]].
FqMat sp_w(const SymplecticSpace& s, const FqMat& c);

struct SpToken {
    enum class Kind { M, N, W0 };
    Kind kind;
    FqMat a; // M: element of GL_m; N: symmetric b; W0: unused

    std::string str() const;
    friend bool operator==(const SpToken& x, const SpToken& y) {
        return x.kind == y.kind && (x.kind == Kind::W0 || x.a == y.a);
    }
};

using GeneratorWord = std::vector<SpToken>;

FqMat token_matrix(const SymplecticSpace& s, const SpToken& t);
FqMat eval_word(const SymplecticSpace& s, const GeneratorWord& w);
GeneratorWord sp_factor(const SymplecticSpace& s, const FqMat& g);

// Fixed generating set of Sp(W): M(diag(xi,1,..)), M(I + beta E_ij),
// N over an F_p-basis of Sym_m(F_q), and W0.
std::vector<SpToken> sp_generators(const SymplecticSpace& s);

// Every element of Sp(W) exactly once, sorted lexicographically by entries.
std::vector<FqMat> sp_enumerate(const SymplecticSpace& s, std::uint64_t bound);

// Symmetric m x m matrices in a fixed enumeration order (upper triangle as digits).
FqMat symmetric_from_index(const SymplecticSpace& s, std::uint64_t idx);

struct HeisElem {
    std::vector<Fq> w; // coordinates (x_1..x_m, y_1..y_m)
    Fq t = 0;
    friend bool operator==(const HeisElem& a, const HeisElem& b) { return a.w == b.w && a.t == b.t; }
    std::string str(const FqField& F) const;
};

HeisElem heis_mul(const SymplecticSpace& s, const HeisElem& a, const HeisElem& b);
HeisElem heis_inv(const SymplecticSpace& s, const HeisElem& a);
HeisElem heis_identity(const SymplecticSpace& s);
HeisElem sp_act(const SymplecticSpace& s, const FqMat& g, const HeisElem& h);
// (beta e_i, 0), (beta f_i, 0) over an F_p-basis, and (0, 1): generates H.
std::vector<HeisElem> heis_generators(const SymplecticSpace& s);
std::vector<HeisElem> heis_enumerate(const SymplecticSpace& s, std::uint64_t bound);

} // namespace weil
