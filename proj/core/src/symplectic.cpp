#include "weil/symplectic.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_set>

namespace weil {

FqMat::FqMat(const FqField& F, std::size_t rows, std::size_t cols) : F_(&F), r_(rows), c_(cols), a_(rows * cols, 0) {}

FqMat FqMat::identity(const FqField& F, std::size_t n) { return scalar(F, n, 1); }

FqMat FqMat::scalar(const FqField& F, std::size_t n, Fq c) {
    FqMat m(F, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

FqMat FqMat::operator*(const FqMat& o) const {
    if (c_ != o.r_) throw Error(ErrorCode::config_invalid, "F_q matrix shape mismatch");
    FqMat out(*F_, r_, o.c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            Fq x = (*this)(i, k);
            if (!x) continue;
            for (std::size_t j = 0; j < o.c_; ++j) {
                Fq y = o(k, j);
                if (y) out(i, j) = F_->add(out(i, j), F_->mul(x, y));
            }
        }
    return out;
}

std::vector<Fq> FqMat::operator*(const std::vector<Fq>& v) const {
    std::vector<Fq> out(r_, 0);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) out[i] = F_->add(out[i], F_->mul((*this)(i, k), v[k]));
    return out;
}

FqMat FqMat::operator+(const FqMat& o) const {
    FqMat out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = F_->add(a_[i], o.a_[i]);
    return out;
}

FqMat FqMat::operator-() const {
    FqMat out = *this;
    for (auto& x : out.a_) x = F_->neg(x);
    return out;
}

FqMat FqMat::scaled(Fq s) const {
    FqMat out = *this;
    for (auto& x : out.a_) x = F_->mul(x, s);
    return out;
}

FqMat FqMat::transpose() const {
    FqMat out(*F_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

FqMat FqMat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    FqMat out(*F_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

void FqMat::set_block(std::size_t r0, std::size_t c0, const FqMat& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

Fq FqMat::det() const {
    FqMat a = *this;
    const std::size_t n = r_;
    Fq d = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            d = F_->neg(d);
        }
        d = F_->mul(d, a(col, col));
        Fq inv = F_->inv(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            Fq c = F_->mul(a(r, col), inv);
            if (!c) continue;
            for (std::size_t j = col; j < n; ++j) a(r, j) = F_->sub(a(r, j), F_->mul(c, a(col, j)));
        }
    }
    return d;
}

bool FqMat::invertible() const { return r_ == c_ && det() != 0; }

FqMat FqMat::inverse() const {
    const std::size_t n = r_;
    FqMat a = *this, inv = identity(*F_, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col) == 0) ++piv;
        if (piv == n) throw Error(ErrorCode::rank_deficiency, "singular F_q matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        Fq s = F_->inv(a(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = F_->mul(a(col, j), s);
            inv(col, j) = F_->mul(inv(col, j), s);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            Fq c = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) = F_->sub(a(r, j), F_->mul(c, a(col, j)));
                inv(r, j) = F_->sub(inv(r, j), F_->mul(c, inv(col, j)));
            }
        }
    }
    return inv;
}

bool FqMat::is_identity() const { return r_ == c_ && *this == identity(*F_, r_); }

bool FqMat::is_zero() const {
    for (Fq x : a_)
        if (x) return false;
    return true;
}

bool FqMat::is_symmetric() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = i + 1; j < c_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

std::string FqMat::str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < r_; ++i) {
        os << (i ? ";" : "");
        for (std::size_t j = 0; j < c_; ++j) os << (j ? "," : "") << F_->str((*this)(i, j));
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------

FqMat SymplecticSpace::gram() const {
    FqMat J(*F, 2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        J(i, m + i) = 1;
        J(m + i, i) = F->neg(1);
    }
    return J;
}

Fq SymplecticSpace::form(const std::vector<Fq>& u, const std::vector<Fq>& v) const {
    // u^T J v = sum_i u_i v_{m+i} - u_{m+i} v_i
    Fq s = 0;
    for (int i = 0; i < m; ++i) {
        s = F->add(s, F->mul(u[i], v[m + i]));
        s = F->sub(s, F->mul(u[m + i], v[i]));
    }
    return s;
}

bool SymplecticSpace::is_symplectic(const FqMat& g) const {
    if (g.rows() != static_cast<std::size_t>(2 * m) || g.cols() != static_cast<std::size_t>(2 * m)) return false;
    FqMat J = gram();
    return g.transpose() * J * g == J;
}

std::uint64_t SymplecticSpace::group_order() const {
    const unsigned __int128 cap = std::numeric_limits<std::uint64_t>::max();
    unsigned __int128 q = static_cast<unsigned __int128>(F->q());
    unsigned __int128 r = 1;
    for (int i = 0; i < m * m; ++i) {
        r *= q;
        if (r > cap) return std::numeric_limits<std::uint64_t>::max();
    }
    unsigned __int128 qp = 1;
    for (int i = 1; i <= m; ++i) {
        qp *= q * q;
        r *= (qp - 1);
        if (r > cap || qp > cap) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

FqMat sp_m(const SymplecticSpace& s, const FqMat& a) {
    FqMat g(*s.F, 2 * s.m, 2 * s.m);
    g.set_block(0, 0, a);
    g.set_block(s.m, s.m, a.inverse().transpose());
    return g;
}

FqMat sp_n(const SymplecticSpace& s, const FqMat& b) {
    FqMat g = FqMat::identity(*s.F, 2 * s.m);
    g.set_block(0, s.m, b);
    return g;
}

FqMat sp_w0(const SymplecticSpace& s) {
    FqMat g(*s.F, 2 * s.m, 2 * s.m);
    for (int i = 0; i < s.m; ++i) {
        g(i, s.m + i) = s.F->neg(1);
        g(s.m + i, i) = 1;
    }
    return g;
}

FqMat sp_w(const SymplecticSpace& s, const FqMat& c) {
    FqMat g(*s.F, 2 * s.m, 2 * s.m);
    g.set_block(0, s.m, -c.inverse().transpose());
    g.set_block(s.m, 0, c);
    return g;
}

std::string SpToken::str() const {
    switch (kind) {
    case Kind::M: return "M(" + a.str() + ")";
    case Kind::N: return "N(" + a.str() + ")";
    case Kind::W0: return "W0";
    }
    return "?";
}

FqMat token_matrix(const SymplecticSpace& s, const SpToken& t) {
    switch (t.kind) {
    case SpToken::Kind::M: return sp_m(s, t.a);
    case SpToken::Kind::N: return sp_n(s, t.a);
    case SpToken::Kind::W0: return sp_w0(s);
    }
    return FqMat();
}

FqMat eval_word(const SymplecticSpace& s, const GeneratorWord& w) {
    FqMat g = FqMat::identity(*s.F, 2 * s.m);
    for (const auto& t : w) g = g * token_matrix(s, t);
    return g;
}

FqMat symmetric_from_index(const SymplecticSpace& s, std::uint64_t idx) {
    const FqField& F = *s.F;
    FqMat b(F, s.m, s.m);
    for (int i = 0; i < s.m; ++i)
        for (int j = i; j < s.m; ++j) {
            Fq v = static_cast<Fq>(idx % F.q());
            idx /= F.q();
            b(i, j) = v;
            b(j, i) = v;
        }
    return b;
}

namespace {

void push_m(GeneratorWord& w, const FqMat& a) {
    if (!a.is_identity()) w.push_back({SpToken::Kind::M, a});
}

void push_n(GeneratorWord& w, const FqMat& b) {
    if (!b.is_zero()) w.push_back({SpToken::Kind::N, b});
}

} // namespace

GeneratorWord sp_factor(const SymplecticSpace& s, const FqMat& g) {
    const std::size_t m = s.m;
    const FqField& F = *s.F;
    FqMat A = g.block(0, 0, m, m), B = g.block(0, m, m, m), C = g.block(m, 0, m, m), D = g.block(m, m, m, m);
    GeneratorWord w;
    if (C.is_zero()) {
        push_m(w, A);
        push_n(w, A.inverse() * B);
        return w;
    }
    if (C.invertible()) {
        FqMat Ci = C.inverse();
        push_n(w, A * Ci);
        w.push_back({SpToken::Kind::W0, FqMat()});
        push_m(w, C);
        push_n(w, Ci * D);
        return w;
    }
    // Move g into the big cell: g' = W0 n(b) g has lower-left block A + bC.
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < m * (m + 1) / 2; ++i) total *= static_cast<std::uint64_t>(F.q());
    for (std::uint64_t idx = 1; idx < total; ++idx) {
        FqMat b = symmetric_from_index(s, idx);
        if (!(A + b * C).invertible()) continue;
        FqMat gp = sp_w0(s) * sp_n(s, b) * g;
        push_n(w, -b);
        push_m(w, FqMat::scalar(F, m, F.neg(1)));
        w.push_back({SpToken::Kind::W0, FqMat()});
        GeneratorWord rest = sp_factor(s, gp);
        w.insert(w.end(), rest.begin(), rest.end());
        return w;
    }
    throw Error(ErrorCode::identity_failure, "no symmetric b moves g into the big cell");
}

std::vector<SpToken> sp_generators(const SymplecticSpace& s) {
    const FqField& F = *s.F;
    const std::size_t m = s.m;
    std::vector<SpToken> gens;
    FqMat d = FqMat::identity(F, m);
    d(0, 0) = F.generator();
    if (!d.is_identity()) gens.push_back({SpToken::Kind::M, d});
    auto basis = F.prime_basis();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            for (Fq beta : basis) {
                FqMat e = FqMat::identity(F, m);
                e(i, j) = beta;
                gens.push_back({SpToken::Kind::M, e});
            }
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            for (Fq beta : basis) {
                FqMat b(F, m, m);
                b(i, j) = beta;
                b(j, i) = beta;
                gens.push_back({SpToken::Kind::N, b});
            }
    gens.push_back({SpToken::Kind::W0, FqMat()});
    return gens;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<Fq>& v) const {
        std::size_t h = 1469598103934665603ULL;
        for (Fq x : v) h = (h ^ x) * 1099511628211ULL;
        return h;
    }
};

} // namespace

std::vector<FqMat> sp_enumerate(const SymplecticSpace& s, std::uint64_t bound) {
    std::uint64_t order = s.group_order();
    if (order > bound) throw Error(ErrorCode::too_large, "|Sp| = " + std::to_string(order) + " exceeds bound");
    std::vector<FqMat> gens;
    for (const auto& t : sp_generators(s)) gens.push_back(token_matrix(s, t));
    std::unordered_set<std::vector<Fq>, VecHash> seen;
    std::vector<FqMat> all;
    FqMat id = FqMat::identity(*s.F, 2 * s.m);
    seen.insert(id.data());
    all.push_back(id);
    for (std::size_t k = 0; k < all.size(); ++k) {
        for (const auto& g : gens) {
            FqMat h = all[k] * g;
            if (seen.insert(h.data()).second) all.push_back(h);
        }
    }
    if (all.size() != order)
        throw Error(ErrorCode::identity_failure, "closure has " + std::to_string(all.size()) + " elements, expected " +
                                                     std::to_string(order));
    std::sort(all.begin(), all.end());
    return all;
}

// ---------------------------------------------------------------------------

std::string HeisElem::str(const FqField& F) const {
    std::ostringstream os;
    os << "((";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << F.str(w[i]);
    os << ")," << F.str(t) << ")";
    return os.str();
}

HeisElem heis_mul(const SymplecticSpace& s, const HeisElem& a, const HeisElem& b) {
    const FqField& F = *s.F;
    HeisElem r;
    r.w.resize(a.w.size());
    for (std::size_t i = 0; i < a.w.size(); ++i) r.w[i] = F.add(a.w[i], b.w[i]);
    r.t = F.add(F.add(a.t, b.t), F.mul(F.half(), s.form(a.w, b.w)));
    return r;
}

HeisElem heis_inv(const SymplecticSpace& s, const HeisElem& a) {
    const FqField& F = *s.F;
    HeisElem r;
    for (Fq x : a.w) r.w.push_back(F.neg(x));
    r.t = F.neg(a.t);
    return r;
}

HeisElem heis_identity(const SymplecticSpace& s) {
    HeisElem h;
    h.w.assign(2 * s.m, 0);
    return h;
}

HeisElem sp_act(const SymplecticSpace& s, const FqMat& g, const HeisElem& h) {
    (void)s;
    return HeisElem{g * h.w, h.t};
}

std::vector<HeisElem> heis_generators(const SymplecticSpace& s) {
    std::vector<HeisElem> gens;
    auto basis = s.F->prime_basis();
    for (int i = 0; i < 2 * s.m; ++i)
        for (Fq beta : basis) {
            HeisElem h = heis_identity(s);
            h.w[i] = beta;
            gens.push_back(h);
        }
    HeisElem c = heis_identity(s);
    c.t = 1;
    gens.push_back(c);
    return gens;
}

std::vector<HeisElem> heis_enumerate(const SymplecticSpace& s, std::uint64_t bound) {
    const long q = s.F->q();
    std::uint64_t total = 1;
    for (int i = 0; i < 2 * s.m + 1; ++i) {
        total *= static_cast<std::uint64_t>(q);
        if (total > bound) throw Error(ErrorCode::too_large, "Heisenberg group exceeds bound");
    }
    std::vector<HeisElem> out;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        HeisElem h;
        std::uint64_t t = idx;
        h.w.resize(2 * s.m);
        for (int i = 0; i < 2 * s.m; ++i) {
            h.w[i] = static_cast<Fq>(t % q);
            t /= q;
        }
        h.t = static_cast<Fq>(t % q);
        out.push_back(h);
    }
    return out;
}

} // namespace weil
