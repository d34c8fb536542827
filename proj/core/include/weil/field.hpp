#pragma once

// Exact arithmetic in Q(zeta_n) and F_l[zeta_n] on a power basis.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "weil/error.hpp"

namespace weil {

enum class FieldKind { rational, modular };

namespace detail {
struct FieldData;
}

class CycloNum;

// Handle to an interned coefficient field. Two handles compare equal iff they
// were made from the same (kind, n, l), so equality is pointer equality.
class CoeffField {
public:
    CoeffField() = default;

    static CoeffField make(FieldKind kind, long n, long ell = 0);
    static CoeffField rational(long n) { return make(FieldKind::rational, n); }
    static CoeffField modular(long n, long ell) { return make(FieldKind::modular, n, ell); }

    FieldKind kind() const;
    long n() const;
    long characteristic() const; // 0 or l
    int degree() const;
    // Monic modulus, low degree first, length degree()+1.
    const std::vector<mpq_class>& modulus() const;
    // Exponents u of the automorphisms zeta -> zeta^u, sorted. In the modular
    // case these are the powers of l mod n.
    const std::vector<long>& galois_group() const;
    bool has_automorphism(long u) const;
    long reduce_exponent(long u) const;

    CoeffField prime_field() const;
    // x^k reduced modulo the modulus for k < 2 degree() - 1.
    const std::vector<std::vector<mpq_class>>& reduction_table() const;

    CycloNum zero() const;
    CycloNum one() const;
    CycloNum from_int(long v) const;
    CycloNum from_rational(const mpq_class& v) const;
    CycloNum zeta(long k = 1) const;
    CycloNum basis(int i) const;

    bool valid() const { return d_ != nullptr; }
    const detail::FieldData* data() const { return d_; }
    std::string describe() const;

    friend bool operator==(const CoeffField& a, const CoeffField& b) { return a.d_ == b.d_; }
    friend bool operator!=(const CoeffField& a, const CoeffField& b) { return a.d_ != b.d_; }

private:
    explicit CoeffField(const detail::FieldData* d) : d_(d) {}
    const detail::FieldData* d_ = nullptr;
    friend class CycloNum;
};

class CycloNum {
public:
    CycloNum() = default;
    CycloNum(CoeffField f, std::vector<mpq_class> coeffs); // reduces

    const CoeffField& field() const { return f_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const; // lies in the prime field
    const mpq_class& rational_part() const { return c_[0]; }

    CycloNum& operator+=(const CycloNum& o);
    CycloNum& operator-=(const CycloNum& o);
    CycloNum& operator*=(const CycloNum& o);
    CycloNum& operator/=(const CycloNum& o);
    CycloNum operator-() const;
    CycloNum inverse() const;
    CycloNum pow(long e) const;
    CycloNum scaled(const mpq_class& s) const;

    friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
    friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
    friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
    friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
    friend bool operator==(const CycloNum& a, const CycloNum& b);
    friend bool operator!=(const CycloNum& a, const CycloNum& b) { return !(a == b); }

    std::size_t hash() const;
    std::string str() const;

private:
    void check_same(const CycloNum& o) const;
    CoeffField f_;
    std::vector<mpq_class> c_;
    friend class CoeffField;
};

std::ostream& operator<<(std::ostream& os, const CycloNum& x);

struct GaloisAut {
    CoeffField field;
    long exponent = 1;

    GaloisAut compose(const GaloisAut& inner) const; // this o inner
    GaloisAut inverse() const;
};

CycloNum apply_aut(const GaloisAut& s, const CycloNum& x);
CycloNum apply_aut(long u, const CycloNum& x);

// Subfield of a coefficient field, encoded by its Galois stabilizer.
class SubfieldTag {
public:
    SubfieldTag() = default;
    SubfieldTag(CoeffField f, std::vector<long> generators); // closes the set

    static SubfieldTag whole(const CoeffField& f);
    static SubfieldTag prime(const CoeffField& f);

    const CoeffField& field() const { return f_; }
    const std::vector<long>& stabilizer() const { return stab_; } // full subgroup, sorted
    std::vector<long> generators() const;                        // greedy, deterministic
    bool contains_aut(long u) const;
    int degree() const; // over the prime field
    int relative_degree(const SubfieldTag& sub) const;
    bool is_subfield_of(const SubfieldTag& other) const;
    SubfieldTag join(const SubfieldTag& other) const; // compositum
    SubfieldTag meet(const SubfieldTag& other) const; // intersection

    friend bool operator==(const SubfieldTag& a, const SubfieldTag& b) {
        return a.f_ == b.f_ && a.stab_ == b.stab_;
    }
    friend bool operator!=(const SubfieldTag& a, const SubfieldTag& b) { return !(a == b); }

private:
    CoeffField f_;
    std::vector<long> stab_;
};

// Closure of a set of exponents under multiplication in the field's Galois group.
std::vector<long> subgroup_closure(const CoeffField& f, const std::vector<long>& gens);

CycloNum gauss_sum(const CoeffField& f, long p);
long p_star(long p);

SubfieldTag subfield_of_values(const CoeffField& f, const std::vector<CycloNum>& values);
bool subfield_membership(const CycloNum& x, const SubfieldTag& t);

// Trace from the field down to the fixed field of `t`.
CycloNum relative_trace(const CycloNum& x, const SubfieldTag& t);

// Trace from the fixed field of `top` down to the fixed field of `base`, for x in top.
CycloNum tower_trace(const CycloNum& x, const SubfieldTag& top, const SubfieldTag& base);
// Coset representatives of stab(top) inside stab(base), least first.
std::vector<long> coset_reps(const SubfieldTag& top, const SubfieldTag& base);

// Basis theta^i of a subfield `top` over `base` with its dual basis under the
// tower trace. The one-argument form takes top = K and theta = zeta.
class RelativeBasis {
public:
    explicit RelativeBasis(const SubfieldTag& base);
    RelativeBasis(const SubfieldTag& top, const SubfieldTag& base);

    const SubfieldTag& base() const { return base_; }
    const SubfieldTag& top() const { return top_; }
    int size() const { return static_cast<int>(basis_.size()); }
    const std::vector<CycloNum>& basis() const { return basis_; }
    std::vector<CycloNum> coords(const CycloNum& x) const; // entries in the base field
    CycloNum combine(const std::vector<CycloNum>& r) const;

private:
    void build(const CycloNum& theta);
    SubfieldTag top_, base_;
    std::vector<CycloNum> basis_;
    std::vector<CycloNum> dual_;
};

// Integral Q-basis (or F_l-basis) of the fixed field of `t`, built from relative
// traces of zeta powers and chosen greedily.
std::vector<CycloNum> subfield_basis(const SubfieldTag& t);

// Human-readable name such as "Q(sqrt(5),sqrt(-5))" when recognisable.
std::string subfield_name(const SubfieldTag& t);

// The same subfield seen inside a larger cyclotomic field of the same kind:
// stabilizer = preimage under reduction mod n. Needs n | N.
SubfieldTag lift_tag(const SubfieldTag& t, const CoeffField& bigger);
// Equal as subfields of a common cyclotomic field.
bool same_subfield(const SubfieldTag& a, const SubfieldTag& b);

// Field embedding Q(zeta_n) -> Q(zeta_N), zeta_n -> zeta_N^(N/n).
CycloNum embed(const CycloNum& x, const CoeffField& target);

// Small number theory helpers.
bool is_prime(long n);
long euler_phi(long n);
long mod_pow(long b, long e, long m);
long mod_inverse(long a, long m);
long multiplicative_order(long a, long n);
long primitive_root(long p);
long gcd_long(long a, long b);

} // namespace weil
