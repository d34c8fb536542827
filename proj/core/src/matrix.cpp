#include "weil/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace weil {

Mat::Mat(CoeffField f, std::size_t rows, std::size_t cols)
    : f_(f), r_(rows), c_(cols), a_(rows * cols, f.zero()) {}

Mat Mat::identity(const CoeffField& f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
}

Mat Mat::scalar(const CycloNum& c, std::size_t n) {
    Mat m(c.field(), n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
}

Mat Mat::from_columns(const CoeffField& f, const std::vector<Vec>& cols) {
    std::size_t n = cols.empty() ? 0 : cols[0].size();
    Mat m(f, n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = cols[j][i];
    return m;
}

namespace {

// Matrix over Q(zeta) scaled to integer coefficients: entry (i, j) coefficient t
// is v[(i * cols + j) * deg + t] / den.
struct IntMat {
    std::vector<std::int64_t> v;
    std::vector<char> nz;
    mpz_class den = 1;
    double maxabs = 0;
};

bool to_int(const Mat& m, IntMat& out) {
    const int deg = m.field().degree();
    const std::size_t cells = m.rows() * m.cols();
    out.v.assign(cells * deg, 0);
    out.nz.assign(cells, 0);
    mpz_class den = 1;
    for (std::size_t e = 0; e < cells; ++e)
        for (const auto& c : m(e / m.cols(), e % m.cols()).coeffs())
            if (sgn(c) != 0 && mpz_cmp_ui(c.get_den_mpz_t(), 1) != 0 && !mpz_divisible_p(den.get_mpz_t(), c.get_den_mpz_t()))
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    out.den = den;
    const double lim = 4.0e18;
    mpz_class x, t;
    for (std::size_t e = 0; e < cells; ++e) {
        const auto& cs = m(e / m.cols(), e % m.cols()).coeffs();
        for (int k = 0; k < deg; ++k) {
            if (sgn(cs[k]) == 0) continue;
            if (mpz_cmp(cs[k].get_den_mpz_t(), den.get_mpz_t()) == 0) {
                x = cs[k].get_num();
            } else {
                mpz_divexact(t.get_mpz_t(), den.get_mpz_t(), cs[k].get_den_mpz_t());
                mpz_mul(x.get_mpz_t(), t.get_mpz_t(), cs[k].get_num_mpz_t());
            }
            if (!x.fits_slong_p()) return false;
            long xv = x.get_si();
            double a = std::fabs(static_cast<double>(xv));
            if (a > lim) return false;
            out.maxabs = std::max(out.maxabs, a);
            out.v[e * deg + k] = xv;
            out.nz[e] = 1;
        }
    }
    return true;
}

// Product through machine integers; false when the accumulation bound could overflow.
bool mul_fast(const Mat& a, const Mat& b, Mat& out) {
    const CoeffField& f = a.field();
    const int deg = f.degree();
    const long ell = f.characteristic();
    const auto& red = f.reduction_table();
    double maxred = 1;
    std::vector<std::vector<std::int64_t>> redi(red.size());
    for (std::size_t k = 0; k < red.size(); ++k)
        for (const auto& c : red[k]) {
            if (!c.get_den().fits_slong_p() || c.get_den() != 1 || !c.get_num().fits_slong_p()) return false;
            redi[k].push_back(c.get_num().get_si());
            maxred = std::max(maxred, std::fabs(c.get_d()));
        }
    IntMat A, B;
    if (!to_int(a, A) || !to_int(b, B)) return false;
    const std::size_t R = a.rows(), K = a.cols(), C = b.cols();
    double bound = A.maxabs * B.maxabs * static_cast<double>(K) * deg * (2.0 * deg) * maxred;
    if (bound > 1.0e37) return false;
    std::vector<std::vector<std::size_t>> nzb(K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t j = 0; j < C; ++j)
            if (B.nz[k * C + j]) nzb[k].push_back(j);
    const int pd = 2 * deg - 1;
    std::vector<__int128> acc(C * pd);
    std::vector<char> touched(C);
    mpz_class den = A.den * B.den;
    for (std::size_t i = 0; i < R; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        std::fill(touched.begin(), touched.end(), 0);
        for (std::size_t k = 0; k < K; ++k) {
            if (!A.nz[i * K + k]) continue;
            const std::int64_t* x = &A.v[(i * K + k) * deg];
            for (std::size_t j : nzb[k]) {
                const std::int64_t* y = &B.v[(k * C + j) * deg];
                __int128* s = &acc[j * pd];
                touched[j] = 1;
                for (int u = 0; u < deg; ++u) {
                    if (!x[u]) continue;
                    for (int w = 0; w < deg; ++w) s[u + w] += static_cast<__int128>(x[u]) * y[w];
                }
            }
        }
        for (std::size_t j = 0; j < C; ++j) {
            if (!touched[j]) continue;
            const __int128* s = &acc[j * pd];
            std::vector<__int128> r(s, s + deg);
            for (int k = deg; k < pd; ++k) {
                if (!s[k]) continue;
                __int128 sk = ell ? s[k] % ell : s[k];
                for (int t = 0; t < deg; ++t)
                    if (redi[k][t]) r[t] += sk * redi[k][t];
            }
            std::vector<mpq_class> cs(deg);
            bool any = false;
            for (int t = 0; t < deg; ++t) {
                __int128 v = r[t];
                if (ell) {
                    v %= ell;
                    if (v < 0) v += ell;
                }
                if (!v) continue;
                any = true;
                bool neg = v < 0;
                unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
                mpz_class z = static_cast<unsigned long>(m >> 64);
                z <<= 64;
                z += static_cast<unsigned long>(m & ~0UL);
                if (neg) z = -z;
                if (ell) cs[t] = mpq_class(z);
                else {
                    cs[t] = mpq_class(z, den);
                    cs[t].canonicalize();
                }
            }
            if (any) out(i, j) = CycloNum(f, std::move(cs));
        }
    }
    return true;
}

} // namespace

Mat Mat::operator*(const Mat& o) const {
    if (f_ != o.f_) throw Error(ErrorCode::field_mismatch, "matrix product across fields");
    if (c_ != o.r_) throw Error(ErrorCode::config_invalid, "matrix shape mismatch");
    Mat out(f_, r_, o.c_);
    if (mul_fast(*this, o, out)) return out;
    std::vector<std::vector<std::size_t>> nz(o.r_);
    for (std::size_t k = 0; k < o.r_; ++k)
        for (std::size_t j = 0; j < o.c_; ++j)
            if (!o(k, j).is_zero()) nz[k].push_back(j);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const CycloNum& x = (*this)(i, k);
            if (x.is_zero() || nz[k].empty()) continue;
            if (x.is_one()) {
                for (std::size_t j : nz[k]) out(i, j) += o(k, j);
            } else {
                for (std::size_t j : nz[k]) out(i, j) += x * o(k, j);
            }
        }
    return out;
}

Vec Mat::operator*(const Vec& v) const {
    Vec out(r_, f_.zero());
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t k = 0; k < c_; ++k) {
            const CycloNum& x = (*this)(i, k);
            if (x.is_zero() || v[k].is_zero()) continue;
            out[i] += x * v[k];
        }
    return out;
}

Mat Mat::operator+(const Mat& o) const {
    Mat out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += o.a_[i];
    return out;
}

Mat Mat::operator-(const Mat& o) const {
    Mat out = *this;
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] -= o.a_[i];
    return out;
}

Mat Mat::scaled(const CycloNum& s) const {
    Mat out = *this;
    for (auto& x : out.a_)
        if (!x.is_zero()) x *= s;
    return out;
}

Mat Mat::operator-() const {
    Mat out = *this;
    for (auto& x : out.a_) x = -x;
    return out;
}

bool operator==(const Mat& a, const Mat& b) {
    return a.f_ == b.f_ && a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
}

bool Mat::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool Mat::is_identity() const {
    if (r_ != c_) return false;
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            const auto& x = (*this)(i, j);
            if (i == j ? !x.is_one() : !x.is_zero()) return false;
        }
    return true;
}

bool Mat::is_scalar(CycloNum* c) const {
    if (r_ != c_ || r_ == 0) return false;
    const CycloNum& d = (*this)(0, 0);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) {
            const auto& x = (*this)(i, j);
            if (i == j ? x != d : !x.is_zero()) return false;
        }
    if (c) *c = d;
    return true;
}

std::size_t Mat::nonzeros() const {
    std::size_t k = 0;
    for (const auto& x : a_)
        if (!x.is_zero()) ++k;
    return k;
}

Mat Mat::transpose() const {
    Mat out(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

Mat Mat::apply_aut(long u) const {
    Mat out = *this;
    for (auto& x : out.a_)
        if (!x.is_zero() && !x.is_rational()) x = weil::apply_aut(u, x);
    return out;
}

CycloNum Mat::trace() const {
    CycloNum t = f_.zero();
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

Mat Mat::inverse() const {
    if (r_ != c_) throw Error(ErrorCode::config_invalid, "inverse of a non-square matrix");
    const std::size_t n = r_;
    Mat a = *this;
    Mat inv = identity(f_, n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a(piv, col).is_zero()) ++piv;
        if (piv == n) throw Error(ErrorCode::rank_deficiency, "singular matrix");
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        CycloNum s = a(col, col).inverse();
        for (std::size_t j = 0; j < n; ++j) {
            if (!a(col, j).is_zero()) a(col, j) *= s;
            if (!inv(col, j).is_zero()) inv(col, j) *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a(r, col).is_zero()) continue;
            CycloNum c = a(r, col);
            for (std::size_t j = 0; j < n; ++j) {
                if (!a(col, j).is_zero()) a(r, j) -= c * a(col, j);
                if (!inv(col, j).is_zero()) inv(r, j) -= c * inv(col, j);
            }
        }
    }
    return inv;
}

Mat Mat::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Mat r = identity(f_, r_), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Mat out(f_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
}

Vec Mat::column(std::size_t j) const {
    Vec v;
    v.reserve(r_);
    for (std::size_t i = 0; i < r_; ++i) v.push_back((*this)(i, j));
    return v;
}

bool Mat::entries_in(const SubfieldTag& t) const {
    for (const auto& x : a_)
        if (!x.is_rational() && !subfield_membership(x, t)) return false;
    return true;
}

std::size_t Mat::hash() const {
    std::size_t h = r_ * 1315423911u + c_;
    for (const auto& x : a_) h = h * 1099511628211ULL ^ x.hash();
    return h;
}

// ---------------------------------------------------------------------------

LinearSystem::LinearSystem(CoeffField f, std::size_t nvars) : f_(f), n_(nvars) {}

bool LinearSystem::add_row(const SparseRow& row) {
    std::map<std::size_t, CycloNum> w;
    for (const auto& [j, v] : row) {
        if (v.is_zero()) continue;
        auto it = w.find(j);
        if (it == w.end()) w.emplace(j, v);
        else it->second += v;
    }
    for (;;) {
        while (!w.empty() && w.begin()->second.is_zero()) w.erase(w.begin());
        if (w.empty()) return false;
        auto pr = rows_.find(w.begin()->first);
        if (pr == rows_.end()) break;
        CycloNum c = w.begin()->second;
        for (const auto& [j, v] : pr->second) {
            CycloNum t = c * v;
            auto wj = w.find(j);
            if (wj == w.end()) w.emplace(j, -t);
            else wj->second -= t;
        }
    }
    for (auto z = w.begin(); z != w.end();) {
        if (z->second.is_zero()) z = w.erase(z);
        else ++z;
    }
    std::size_t piv = w.begin()->first;
    CycloNum s = w.begin()->second.inverse();
    for (auto& [j, v] : w) v *= s;
    rows_.emplace(piv, std::move(w));
    return true;
}

bool LinearSystem::add_dense_row(const Vec& row) {
    SparseRow s;
    for (std::size_t j = 0; j < row.size(); ++j)
        if (!row[j].is_zero()) s.emplace_back(j, row[j]);
    return add_row(s);
}

std::vector<Vec> LinearSystem::nullspace() const {
    // back substitution to reduced form
    std::map<std::size_t, std::map<std::size_t, CycloNum>> red;
    for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
        std::map<std::size_t, CycloNum> w = it->second;
        std::vector<std::size_t> keys;
        for (const auto& [j, v] : w)
            if (j != it->first) keys.push_back(j);
        for (std::size_t j : keys) {
            auto rr = red.find(j);
            if (rr == red.end()) continue;
            auto wj = w.find(j);
            if (wj == w.end() || wj->second.is_zero()) continue;
            CycloNum c = wj->second;
            for (const auto& [k, v] : rr->second) {
                if (k == j) continue;
                auto wk = w.find(k);
                CycloNum t = c * v;
                if (wk == w.end()) w.emplace(k, -t);
                else wk->second -= t;
            }
            w.erase(j);
        }
        for (auto z = w.begin(); z != w.end();) {
            if (z->second.is_zero()) z = w.erase(z);
            else ++z;
        }
        red.emplace(it->first, std::move(w));
    }
    std::vector<Vec> basis;
    for (std::size_t free = 0; free < n_; ++free) {
        if (red.count(free)) continue;
        Vec v(n_, f_.zero());
        v[free] = f_.one();
        for (const auto& [p, row] : red) {
            auto e = row.find(free);
            if (e != row.end()) v[p] = -e->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<Vec> nullspace(const Mat& a) {
    LinearSystem sys(a.field(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        SparseRow row;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) row.emplace_back(j, a(i, j));
        sys.add_row(row);
        if (sys.full_rank()) break;
    }
    return sys.nullspace();
}

std::size_t rank(const Mat& a) {
    LinearSystem sys(a.field(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        SparseRow row;
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero()) row.emplace_back(j, a(i, j));
        sys.add_row(row);
    }
    return sys.rank();
}

std::size_t rank_of_vectors(const CoeffField& f, const std::vector<Vec>& vs) {
    if (vs.empty()) return 0;
    LinearSystem sys(f, vs[0].size());
    for (const auto& v : vs) sys.add_dense_row(v);
    return sys.rank();
}

bool solve(const Mat& a, const Vec& b, Vec& x) {
    // nullspace of [a | -b] with last coordinate 1
    const std::size_t n = a.cols();
    LinearSystem sys(a.field(), n + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        SparseRow row;
        for (std::size_t j = 0; j < n; ++j)
            if (!a(i, j).is_zero()) row.emplace_back(j, a(i, j));
        if (!b[i].is_zero()) row.emplace_back(n, -b[i]);
        sys.add_row(row);
    }
    for (const auto& v : sys.nullspace()) {
        if (v[n].is_zero()) continue;
        CycloNum s = v[n].inverse();
        x.assign(n, a.field().zero());
        for (std::size_t j = 0; j < n; ++j) x[j] = v[j] * s;
        return true;
    }
    return false;
}

Mat embed(const Mat& a, const CoeffField& target) {
    if (a.field() == target) return a;
    Mat out(target, a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = embed(a(i, j), target);
    return out;
}

} // namespace weil
