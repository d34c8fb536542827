#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "weil/field.hpp"

namespace weil {

using Vec = std::vector<CycloNum>;

// Dense exact matrix over a coefficient field, row-major.
class Mat {
public:
    Mat() = default;
    Mat(CoeffField f, std::size_t rows, std::size_t cols);

    static Mat identity(const CoeffField& f, std::size_t n);
    static Mat scalar(const CycloNum& c, std::size_t n);
    static Mat from_columns(const CoeffField& f, const std::vector<Vec>& cols);

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    const CoeffField& field() const { return f_; }

    CycloNum& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const CycloNum& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    Mat operator*(const Mat& o) const;
    Vec operator*(const Vec& v) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat scaled(const CycloNum& s) const;
    Mat operator-() const;

    friend bool operator==(const Mat& a, const Mat& b);
    friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

    bool is_zero() const;
    bool is_identity() const;
    // True if the matrix is c * Id; stores c.
    bool is_scalar(CycloNum* c = nullptr) const;
    std::size_t nonzeros() const;

    Mat transpose() const;
    Mat apply_aut(long u) const;
    CycloNum trace() const;
    Mat inverse() const;
    Mat pow(long e) const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    Vec column(std::size_t j) const;
    bool entries_in(const SubfieldTag& t) const;

    std::size_t hash() const;

private:
    CoeffField f_;
    std::size_t r_ = 0, c_ = 0;
    std::vector<CycloNum> a_;
};

using SparseRow = std::vector<std::pair<std::size_t, CycloNum>>;

// Incremental exact elimination for homogeneous systems with many sparse rows.
class LinearSystem {
public:
    LinearSystem(CoeffField f, std::size_t nvars);

    // Returns false if the row was dependent on earlier ones.
    bool add_row(const SparseRow& row);
    bool add_dense_row(const Vec& row);

    std::size_t nvars() const { return n_; }
    std::size_t rank() const { return rows_.size(); }
    bool full_rank() const { return rows_.size() == n_; }

    // Basis of the solution space; each vector has a 1 at its free variable and
    // 0 at every other free variable.
    std::vector<Vec> nullspace() const;

private:
    CoeffField f_;
    std::size_t n_;
    std::map<std::size_t, std::map<std::size_t, CycloNum>> rows_; // pivot -> row (pivot entry 1)
};

std::vector<Vec> nullspace(const Mat& a);
std::size_t rank(const Mat& a);
std::size_t rank_of_vectors(const CoeffField& f, const std::vector<Vec>& vs);
// Solve a x = b; returns false if inconsistent.
bool solve(const Mat& a, const Vec& b, Vec& x);

// Map a vector from one coefficient field to a larger one.
Mat embed(const Mat& a, const CoeffField& target);

} // namespace weil
