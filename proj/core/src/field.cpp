#include "weil/field.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <tuple>

namespace weil {

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::config_invalid: return "config-invalid";
    case ErrorCode::too_large: return "too-large";
    case ErrorCode::not_found_within_bound: return "not-found-within-bound";
    case ErrorCode::invalid_characteristic: return "invalid-characteristic";
    case ErrorCode::field_mismatch: return "field-mismatch";
    case ErrorCode::zero_input: return "zero-input";
    case ErrorCode::bad_tower: return "bad-tower";
    case ErrorCode::cocycle_violation: return "cocycle-violation";
    case ErrorCode::identity_failure: return "identity-failure";
    case ErrorCode::datum_invalid: return "datum-invalid";
    case ErrorCode::rank_deficiency: return "rank-deficiency";
    case ErrorCode::not_irreducible: return "not-irreducible";
    }
    return "error";
}

// ---------------------------------------------------------------------------
// number theory

long gcd_long(long a, long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long euler_phi(long n) {
    long r = n;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            while (n % d == 0) n /= d;
            r -= r / d;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

long mod_pow(long b, long e, long m) {
    if (m == 1) return 0;
    __int128 r = 1, x = ((b % m) + m) % m;
    while (e > 0) {
        if (e & 1) r = r * x % m;
        x = x * x % m;
        e >>= 1;
    }
    return static_cast<long>(r);
}

long mod_inverse(long a, long m) {
    long old_r = ((a % m) + m) % m, r = m, old_s = 1, s = 0;
    while (r != 0) {
        long q = old_r / r;
        long t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw Error(ErrorCode::zero_input, "not invertible modulo " + std::to_string(m));
    return ((old_s % m) + m) % m;
}

long multiplicative_order(long a, long n) {
    if (n == 1) return 1;
    a = ((a % n) + n) % n;
    if (gcd_long(a, n) != 1) throw Error(ErrorCode::config_invalid, "order of a non-unit");
    long k = 1, x = a;
    while (x != 1) {
        x = static_cast<long>(static_cast<__int128>(x) * a % n);
        ++k;
    }
    return k;
}

long primitive_root(long p) {
    for (long g = 1; g < p; ++g)
        if (multiplicative_order(g, p) == p - 1) return g;
    return 1;
}

long p_star(long p) { return (p % 4 == 3) ? -p : p; }

// ---------------------------------------------------------------------------
// prime-field polynomials (low degree first)

namespace {

using Poly = std::vector<mpq_class>;

struct PrimeOps {
    long ell = 0;

    void norm(mpq_class& x) const {
        if (ell == 0) return;
        mpz_class num = x.get_num(), den = x.get_den();
        mpz_class l = ell;
        if (den != 1) {
            mpz_class inv;
            if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), l.get_mpz_t()))
                throw Error(ErrorCode::invalid_characteristic, "denominator divisible by characteristic");
            num *= inv;
        }
        mpz_class r;
        mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), l.get_mpz_t());
        x = mpq_class(r);
    }
    mpq_class inv(const mpq_class& x) const {
        if (x == 0) throw Error(ErrorCode::zero_input, "division by zero");
        mpq_class r = 1 / x;
        norm(r);
        return r;
    }
};

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, const PrimeOps& ops) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    for (auto& c : r) ops.norm(c);
    trim(r);
    return r;
}

Poly poly_sub(const Poly& a, const Poly& b, const PrimeOps& ops) {
    Poly r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    for (auto& c : r) ops.norm(c);
    trim(r);
    return r;
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r, const PrimeOps& ops) {
    r = a;
    trim(r);
    q.clear();
    if (b.empty()) throw Error(ErrorCode::zero_input, "polynomial division by zero");
    if (r.size() < b.size()) return;
    q.assign(r.size() - b.size() + 1, mpq_class(0));
    mpq_class lead_inv = ops.inv(b.back());
    while (r.size() >= b.size()) {
        std::size_t shift = r.size() - b.size();
        mpq_class c = r.back() * lead_inv;
        ops.norm(c);
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) {
            r[shift + i] -= c * b[i];
            ops.norm(r[shift + i]);
        }
        trim(r);
    }
    trim(q);
}

Poly cyclotomic_poly(long n) {
    // x^n - 1 divided by Phi_d for proper divisors d.
    Poly num(n + 1, mpq_class(0));
    num[0] = -1;
    num[n] = 1;
    PrimeOps q;
    for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        Poly quo, rem;
        poly_divmod(num, cyclotomic_poly(d), quo, rem, q);
        num = quo;
    }
    return num;
}

} // namespace

// ---------------------------------------------------------------------------
// field data

namespace detail {

struct FieldData {
    FieldKind kind;
    long n;
    long ell;
    int deg;
    Poly modulus;
    std::vector<Poly> xpow;     // x^k reduced, k in [0, 2 deg - 1)
    std::vector<Poly> zeta_pow; // zeta^k, k in [0, n)
    std::vector<long> gal;
    const FieldData* prime = nullptr;
    PrimeOps ops;
};

} // namespace detail

namespace {

std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}

std::map<std::tuple<int, long, long>, std::unique_ptr<detail::FieldData>>& registry() {
    static std::map<std::tuple<int, long, long>, std::unique_ptr<detail::FieldData>> r;
    return r;
}

Poly reduce_poly(Poly a, const detail::FieldData& d) {
    Poly q, r;
    poly_divmod(a, d.modulus, q, r, d.ops);
    r.resize(d.deg, mpq_class(0));
    return r;
}

Poly least_factor_mod(long n, long ell, int deg) {
    PrimeOps ops{ell};
    Poly phi = cyclotomic_poly(n);
    for (auto& c : phi) ops.norm(c);
    long total = 1;
    for (int i = 0; i < deg; ++i) {
        total *= ell;
        if (total > 20000000)
            throw Error(ErrorCode::too_large, "modulus search space l^d too large");
    }
    for (long idx = 0; idx < total; ++idx) {
        Poly g(deg + 1, mpq_class(0));
        long t = idx;
        for (int i = 0; i < deg; ++i) {
            g[i] = t % ell;
            t /= ell;
        }
        g[deg] = 1;
        Poly q, r;
        poly_divmod(phi, g, q, r, ops);
        if (r.empty()) return g;
    }
    throw Error(ErrorCode::invalid_characteristic, "no factor of the cyclotomic polynomial found");
}

const detail::FieldData* build_field(FieldKind kind, long n, long ell) {
    auto d = std::make_unique<detail::FieldData>();
    d->kind = kind;
    d->n = n;
    d->ell = kind == FieldKind::modular ? ell : 0;
    d->ops.ell = d->ell;
    if (kind == FieldKind::rational) {
        d->modulus = cyclotomic_poly(n);
        d->deg = static_cast<int>(d->modulus.size()) - 1;
        for (long u = 1; u <= n; ++u)
            if (gcd_long(u, n) == 1) d->gal.push_back(u % n == 0 ? 0 : u % n);
        if (n == 1) d->gal = {0};
    } else {
        d->deg = static_cast<int>(multiplicative_order(ell, n));
        d->modulus = least_factor_mod(n, ell, d->deg);
        std::set<long> g;
        long x = 1 % n;
        for (int i = 0; i < d->deg; ++i) {
            g.insert(x);
            x = static_cast<long>(static_cast<__int128>(x) * ell % n);
        }
        d->gal.assign(g.begin(), g.end());
    }
    std::sort(d->gal.begin(), d->gal.end());
    // reduction tables
    for (int k = 0; k < std::max(1, 2 * d->deg - 1); ++k) {
        Poly xk(k + 1, mpq_class(0));
        xk[k] = 1;
        d->xpow.push_back(reduce_poly(xk, *d));
    }
    for (long k = 0; k < n; ++k) {
        Poly xk(k + 1, mpq_class(0));
        xk[k] = 1;
        d->zeta_pow.push_back(reduce_poly(xk, *d));
    }
    return d.release();
}

} // namespace

CoeffField CoeffField::make(FieldKind kind, long n, long ell) {
    if (n < 1) throw Error(ErrorCode::config_invalid, "root-of-unity order must be positive");
    if (kind == FieldKind::modular) {
        if (!is_prime(ell)) throw Error(ErrorCode::invalid_characteristic, "characteristic must be prime");
        if (n % ell == 0) throw Error(ErrorCode::invalid_characteristic, "characteristic divides n");
    } else {
        ell = 0;
    }
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto key = std::make_tuple(static_cast<int>(kind), n, ell);
    auto& reg = registry();
    auto it = reg.find(key);
    if (it != reg.end()) return CoeffField(it->second.get());
    const detail::FieldData* raw = build_field(kind, n, ell);
    reg.emplace(key, std::unique_ptr<detail::FieldData>(const_cast<detail::FieldData*>(raw)));
    auto* mut = const_cast<detail::FieldData*>(raw);
    if (n == 1) {
        mut->prime = raw;
    } else {
        auto pkey = std::make_tuple(static_cast<int>(kind), 1L, ell);
        auto pit = reg.find(pkey);
        if (pit == reg.end()) {
            const detail::FieldData* p = build_field(kind, 1, ell);
            const_cast<detail::FieldData*>(p)->prime = p;
            reg.emplace(pkey, std::unique_ptr<detail::FieldData>(const_cast<detail::FieldData*>(p)));
            mut->prime = p;
        } else {
            mut->prime = pit->second.get();
        }
    }
    return CoeffField(raw);
}

FieldKind CoeffField::kind() const { return d_->kind; }
long CoeffField::n() const { return d_->n; }
long CoeffField::characteristic() const { return d_->ell; }
int CoeffField::degree() const { return d_->deg; }
const std::vector<mpq_class>& CoeffField::modulus() const { return d_->modulus; }
const std::vector<long>& CoeffField::galois_group() const { return d_->gal; }
CoeffField CoeffField::prime_field() const { return CoeffField(d_->prime); }

const std::vector<std::vector<mpq_class>>& CoeffField::reduction_table() const { return d_->xpow; }

long CoeffField::reduce_exponent(long u) const {
    long n = d_->n;
    long r = ((u % n) + n) % n;
    return r;
}

bool CoeffField::has_automorphism(long u) const {
    long r = reduce_exponent(u);
    return std::binary_search(d_->gal.begin(), d_->gal.end(), r);
}

CycloNum CoeffField::zero() const {
    CycloNum z;
    z.f_ = *this;
    z.c_.assign(d_->deg, mpq_class(0));
    return z;
}

CycloNum CoeffField::one() const { return from_int(1); }

CycloNum CoeffField::from_int(long v) const { return from_rational(mpq_class(v)); }

CycloNum CoeffField::from_rational(const mpq_class& v) const {
    CycloNum z = zero();
    z.c_[0] = v;
    d_->ops.norm(z.c_[0]);
    return z;
}

CycloNum CoeffField::zeta(long k) const {
    long n = d_->n;
    long r = ((k % n) + n) % n;
    CycloNum z;
    z.f_ = *this;
    z.c_ = d_->zeta_pow[r];
    return z;
}

CycloNum CoeffField::basis(int i) const {
    CycloNum z = zero();
    z.c_[i] = 1;
    return z;
}

std::string CoeffField::describe() const {
    std::ostringstream os;
    if (d_->kind == FieldKind::rational) {
        if (d_->n == 1) os << "Q";
        else os << "Q(zeta_" << d_->n << ")";
    } else {
        os << "F_" << d_->ell;
        if (d_->deg > 1) os << "^" << d_->deg;
        if (d_->n > 1) os << "[zeta_" << d_->n << "]";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// CycloNum

CycloNum::CycloNum(CoeffField f, std::vector<mpq_class> coeffs) : f_(f) {
    const auto& d = *f.data();
    for (auto& c : coeffs) d.ops.norm(c);
    if (static_cast<int>(coeffs.size()) > d.deg) {
        std::vector<mpq_class> r(d.deg, mpq_class(0));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] == 0) continue;
            if (static_cast<int>(k) < d.deg) {
                r[k] += coeffs[k];
            } else {
                Poly xk(k + 1, mpq_class(0));
                xk[k] = 1;
                Poly red = reduce_poly(xk, d);
                for (int i = 0; i < d.deg; ++i) r[i] += coeffs[k] * red[i];
            }
        }
        for (auto& c : r) d.ops.norm(c);
        c_ = std::move(r);
    } else {
        coeffs.resize(d.deg, mpq_class(0));
        c_ = std::move(coeffs);
    }
}

void CycloNum::check_same(const CycloNum& o) const {
    if (f_ != o.f_) throw Error(ErrorCode::field_mismatch, f_.describe() + " vs " + o.f_.describe());
}

bool CycloNum::is_zero() const {
    for (const auto& c : c_)
        if (sgn(c) != 0) return false;
    return true;
}

bool CycloNum::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

bool CycloNum::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
    check_same(o);
    const auto& ops = f_.data()->ops;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(o.c_[i]) == 0) continue;
        c_[i] += o.c_[i];
        if (ops.ell) ops.norm(c_[i]);
    }
    return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
    check_same(o);
    const auto& ops = f_.data()->ops;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(o.c_[i]) == 0) continue;
        c_[i] -= o.c_[i];
        if (ops.ell) ops.norm(c_[i]);
    }
    return *this;
}

CycloNum CycloNum::operator-() const {
    CycloNum r = *this;
    const auto& ops = f_.data()->ops;
    for (auto& c : r.c_) {
        c = -c;
        if (ops.ell) ops.norm(c);
    }
    return r;
}

CycloNum CycloNum::scaled(const mpq_class& s) const {
    CycloNum r = *this;
    const auto& ops = f_.data()->ops;
    for (auto& c : r.c_) {
        if (sgn(c) == 0) continue;
        c *= s;
        if (ops.ell) ops.norm(c);
    }
    return r;
}

namespace {

// Modular product with machine integers.
void mul_modular(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                 std::vector<mpq_class>& out, const detail::FieldData& d) {
    const int deg = d.deg;
    const long ell = d.ell;
    std::vector<long> ai(deg), bi(deg);
    for (int i = 0; i < deg; ++i) {
        ai[i] = a[i].get_num().get_si();
        bi[i] = b[i].get_num().get_si();
    }
    std::vector<__int128> prod(2 * deg - 1, 0);
    for (int i = 0; i < deg; ++i) {
        if (!ai[i]) continue;
        for (int j = 0; j < deg; ++j) prod[i + j] += static_cast<__int128>(ai[i]) * bi[j];
    }
    std::vector<__int128> res(deg, 0);
    for (int k = 0; k < 2 * deg - 1; ++k) {
        long pk = static_cast<long>(prod[k] % ell);
        if (!pk) continue;
        if (k < deg) {
            res[k] += pk;
        } else {
            const auto& red = d.xpow[k];
            for (int i = 0; i < deg; ++i) res[i] += static_cast<__int128>(pk) * red[i].get_num().get_si();
        }
    }
    out.resize(deg);
    for (int i = 0; i < deg; ++i) {
        long v = static_cast<long>(res[i] % ell);
        if (v < 0) v += ell;
        out[i] = v;
    }
}

} // namespace

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
    a.check_same(b);
    const auto& d = *a.f_.data();
    CycloNum r;
    r.f_ = a.f_;
    if (d.ell) {
        mul_modular(a.c_, b.c_, r.c_, d);
        return r;
    }
    const int deg = d.deg;
    if (deg == 1) {
        r.c_.assign(1, a.c_[0] * b.c_[0]);
        return r;
    }
    std::vector<mpq_class> prod(2 * deg - 1, mpq_class(0));
    bool any = false;
    for (int i = 0; i < deg; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (int j = 0; j < deg; ++j) {
            if (sgn(b.c_[j]) == 0) continue;
            prod[i + j] += a.c_[i] * b.c_[j];
            any = true;
        }
    }
    r.c_.assign(deg, mpq_class(0));
    if (!any) return r;
    for (int k = 0; k < 2 * deg - 1; ++k) {
        if (sgn(prod[k]) == 0) continue;
        if (k < deg) {
            r.c_[k] += prod[k];
        } else {
            const auto& red = d.xpow[k];
            for (int i = 0; i < deg; ++i)
                if (sgn(red[i]) != 0) r.c_[i] += prod[k] * red[i];
        }
    }
    return r;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) {
    *this = *this * o;
    return *this;
}

CycloNum CycloNum::inverse() const {
    if (is_zero()) throw Error(ErrorCode::zero_input, "inverse of zero");
    const auto& d = *f_.data();
    if (is_rational()) return f_.from_rational(d.ops.ell ? d.ops.inv(c_[0]) : 1 / c_[0]);
    Poly r0 = d.modulus, r1 = c_;
    trim(r1);
    Poly s0, s1{mpq_class(1)};
    while (!r1.empty()) {
        Poly q, r;
        poly_divmod(r0, r1, q, r, d.ops);
        Poly ns = poly_sub(s0, poly_mul(q, s1, d.ops), d.ops);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(ns);
    }
    // r0 is a nonzero constant
    mpq_class cinv = d.ops.inv(r0[0]);
    for (auto& c : s0) {
        c *= cinv;
        d.ops.norm(c);
    }
    CycloNum res(f_, s0);
    return res;
}

CycloNum& CycloNum::operator/=(const CycloNum& o) {
    *this = *this * o.inverse();
    return *this;
}

CycloNum CycloNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycloNum r = f_.one(), b = *this;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

bool operator==(const CycloNum& a, const CycloNum& b) {
    if (a.f_ != b.f_) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

std::size_t CycloNum::hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (const auto& c : c_) {
        std::size_t v = mpz_get_ui(c.get_num_mpz_t()) * 31 + mpz_get_ui(c.get_den_mpz_t());
        v ^= static_cast<std::size_t>(sgn(c) + 1);
        h = (h ^ v) * 1099511628211ULL;
    }
    return h;
}

std::string CycloNum::str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << c_[i].get_str();
        } else {
            if (c_[i] != 1) os << c_[i].get_str() << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloNum& x) { return os << x.str(); }

// ---------------------------------------------------------------------------
// Galois action

GaloisAut GaloisAut::compose(const GaloisAut& inner) const {
    long n = field.n();
    return GaloisAut{field, static_cast<long>(static_cast<__int128>(exponent) * inner.exponent % n)};
}

GaloisAut GaloisAut::inverse() const {
    long n = field.n();
    if (n == 1) return *this;
    return GaloisAut{field, mod_inverse(exponent, n)};
}

CycloNum apply_aut(long u, const CycloNum& x) {
    const auto& f = x.field();
    const auto& d = *f.data();
    long n = d.n;
    if (n == 1) return x;
    long ur = f.reduce_exponent(u);
    if (!f.has_automorphism(ur))
        throw Error(ErrorCode::field_mismatch, "exponent " + std::to_string(u) + " is not an automorphism of " +
                                                   f.describe());
    if (ur == 1) return x;
    std::vector<mpq_class> out(d.deg, mpq_class(0));
    const auto& c = x.coeffs();
    for (int i = 0; i < d.deg; ++i) {
        if (sgn(c[i]) == 0) continue;
        long k = static_cast<long>(static_cast<__int128>(ur) * i % n);
        const auto& z = d.zeta_pow[k];
        for (int j = 0; j < d.deg; ++j)
            if (sgn(z[j]) != 0) out[j] += c[i] * z[j];
    }
    return CycloNum(f, std::move(out));
}

CycloNum apply_aut(const GaloisAut& s, const CycloNum& x) {
    if (s.field != x.field()) throw Error(ErrorCode::field_mismatch, "automorphism of another field");
    return apply_aut(s.exponent, x);
}

// ---------------------------------------------------------------------------
// subfields

std::vector<long> subgroup_closure(const CoeffField& f, const std::vector<long>& gens) {
    long n = f.n();
    std::set<long> s;
    s.insert(f.reduce_exponent(1));
    std::vector<long> frontier(s.begin(), s.end());
    std::vector<long> g;
    for (long u : gens) {
        long r = f.reduce_exponent(u);
        if (!f.has_automorphism(r))
            throw Error(ErrorCode::field_mismatch, "exponent " + std::to_string(u) + " not in the Galois group");
        g.push_back(r);
    }
    while (!frontier.empty()) {
        std::vector<long> next;
        for (long x : frontier)
            for (long y : g) {
                long z = n == 1 ? 0 : static_cast<long>(static_cast<__int128>(x) * y % n);
                if (s.insert(z).second) next.push_back(z);
            }
        frontier = std::move(next);
    }
    return {s.begin(), s.end()};
}

SubfieldTag::SubfieldTag(CoeffField f, std::vector<long> generators)
    : f_(f), stab_(subgroup_closure(f, generators)) {}

SubfieldTag SubfieldTag::whole(const CoeffField& f) { return SubfieldTag(f, {}); }
SubfieldTag SubfieldTag::prime(const CoeffField& f) { return SubfieldTag(f, f.galois_group()); }

std::vector<long> SubfieldTag::generators() const {
    std::vector<long> gens;
    std::vector<long> cur = subgroup_closure(f_, {});
    for (long u : stab_) {
        if (std::binary_search(cur.begin(), cur.end(), u)) continue;
        gens.push_back(u);
        cur = subgroup_closure(f_, gens);
    }
    return gens;
}

bool SubfieldTag::contains_aut(long u) const {
    return std::binary_search(stab_.begin(), stab_.end(), f_.reduce_exponent(u));
}

int SubfieldTag::degree() const {
    return static_cast<int>(f_.galois_group().size() / stab_.size());
}

bool SubfieldTag::is_subfield_of(const SubfieldTag& other) const {
    if (f_ != other.f_) return false;
    return std::includes(stab_.begin(), stab_.end(), other.stab_.begin(), other.stab_.end());
}

int SubfieldTag::relative_degree(const SubfieldTag& sub) const {
    if (!sub.is_subfield_of(*this)) throw Error(ErrorCode::bad_tower, "not a subfield");
    return static_cast<int>(sub.stab_.size() / stab_.size());
}

SubfieldTag SubfieldTag::join(const SubfieldTag& other) const {
    std::vector<long> inter;
    std::set_intersection(stab_.begin(), stab_.end(), other.stab_.begin(), other.stab_.end(),
                          std::back_inserter(inter));
    SubfieldTag t;
    t.f_ = f_;
    t.stab_ = inter;
    return t;
}

SubfieldTag SubfieldTag::meet(const SubfieldTag& other) const {
    std::vector<long> u = stab_;
    u.insert(u.end(), other.stab_.begin(), other.stab_.end());
    return SubfieldTag(f_, u);
}

CycloNum gauss_sum(const CoeffField& f, long p) {
    if (!is_prime(p) || p == 2) throw Error(ErrorCode::config_invalid, "gauss sum needs an odd prime");
    if (f.n() % p != 0) throw Error(ErrorCode::field_mismatch, "field does not contain zeta_p");
    long step = f.n() / p;
    CycloNum g = f.zero();
    for (long x = 0; x < p; ++x) g += f.zeta(step * (x * x % p));
    if (g * g != f.from_int(p_star(p)))
        throw Error(ErrorCode::identity_failure, "gauss sum square differs from p*");
    return g;
}

SubfieldTag subfield_of_values(const CoeffField& f, const std::vector<CycloNum>& values) {
    std::vector<long> stab;
    for (long u : f.galois_group()) {
        bool fixes = true;
        for (const auto& v : values) {
            if (v.field() != f) throw Error(ErrorCode::field_mismatch, "value from another field");
            if (apply_aut(u, v) != v) {
                fixes = false;
                break;
            }
        }
        if (fixes) stab.push_back(u);
    }
    return SubfieldTag(f, stab);
}

bool subfield_membership(const CycloNum& x, const SubfieldTag& t) {
    if (x.field() != t.field()) throw Error(ErrorCode::field_mismatch, "membership across fields");
    for (long u : t.generators())
        if (apply_aut(u, x) != x) return false;
    return true;
}

CycloNum relative_trace(const CycloNum& x, const SubfieldTag& t) {
    CycloNum s = x.field().zero();
    for (long u : t.stabilizer()) s += apply_aut(u, x);
    return s;
}

namespace {

// Solve G x = b for small dense systems over a coefficient field.
std::vector<std::vector<CycloNum>> small_inverse(std::vector<std::vector<CycloNum>> a) {
    const std::size_t k = a.size();
    const CoeffField& f = a[0][0].field();
    std::vector<std::vector<CycloNum>> inv(k, std::vector<CycloNum>(k, f.zero()));
    for (std::size_t i = 0; i < k; ++i) inv[i][i] = f.one();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        while (piv < k && a[piv][col].is_zero()) ++piv;
        if (piv == k) throw Error(ErrorCode::rank_deficiency, "singular trace form");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        CycloNum s = a[col][col].inverse();
        for (std::size_t j = 0; j < k; ++j) {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            CycloNum c = a[r][col];
            for (std::size_t j = 0; j < k; ++j) {
                a[r][j] -= c * a[col][j];
                inv[r][j] -= c * inv[col][j];
            }
        }
    }
    return inv;
}

} // namespace

std::vector<long> coset_reps(const SubfieldTag& top, const SubfieldTag& base) {
    for (long u : top.stabilizer())
        if (!base.contains_aut(u)) throw Error(ErrorCode::bad_tower, "base is not contained in top");
    const CoeffField& f = top.field();
    std::vector<long> reps;
    std::set<long> seen;
    for (long u : base.stabilizer()) {
        if (seen.count(u)) continue;
        reps.push_back(u);
        for (long h : top.stabilizer()) seen.insert(f.reduce_exponent(u * h));
    }
    return reps;
}

CycloNum tower_trace(const CycloNum& x, const SubfieldTag& top, const SubfieldTag& base) {
    CycloNum s = x.field().zero();
    for (long u : coset_reps(top, base)) s += apply_aut(u, x);
    return s;
}

RelativeBasis::RelativeBasis(const SubfieldTag& base) : top_(SubfieldTag::whole(base.field())), base_(base) {
    build(base.field().zeta(1));
}

RelativeBasis::RelativeBasis(const SubfieldTag& top, const SubfieldTag& base) : top_(top), base_(base) {
    const CoeffField& f = top.field();
    auto reps = coset_reps(top, base);
    auto primitive = [&](const CycloNum& th) {
        std::vector<CycloNum> images;
        for (long u : reps) {
            CycloNum v = apply_aut(u, th);
            for (const auto& w : images)
                if (w == v) return false;
            images.push_back(v);
        }
        return true;
    };
    // relative traces of zeta powers, then small combinations of them
    std::vector<CycloNum> cands;
    for (long j = 1; j < f.n(); ++j) cands.push_back(relative_trace(f.zeta(j), top));
    for (const auto& c : cands)
        if (primitive(c)) {
            build(c);
            return;
        }
    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t j = i + 1; j < cands.size(); ++j)
            for (long k = 1; k <= 3; ++k) {
                CycloNum c = cands[i] + cands[j].scaled(k);
                if (primitive(c)) {
                    build(c);
                    return;
                }
            }
    throw Error(ErrorCode::rank_deficiency, "no primitive element found for the tower");
}

void RelativeBasis::build(const CycloNum& theta) {
    const CoeffField& f = base_.field();
    const int k = static_cast<int>(coset_reps(top_, base_).size());
    CycloNum pw = f.one();
    for (int i = 0; i < k; ++i) {
        basis_.push_back(pw);
        pw *= theta;
    }
    std::vector<std::vector<CycloNum>> gram(k, std::vector<CycloNum>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) gram[i][j] = tower_trace(basis_[i] * basis_[j], top_, base_);
    auto inv = small_inverse(gram);
    for (int j = 0; j < k; ++j) {
        CycloNum d = f.zero();
        for (int i = 0; i < k; ++i) d += inv[i][j] * basis_[i];
        dual_.push_back(d);
    }
}

std::vector<CycloNum> RelativeBasis::coords(const CycloNum& x) const {
    std::vector<CycloNum> r;
    r.reserve(dual_.size());
    for (const auto& d : dual_) r.push_back(tower_trace(x * d, top_, base_));
    return r;
}

CycloNum RelativeBasis::combine(const std::vector<CycloNum>& r) const {
    CycloNum s = base_.field().zero();
    for (std::size_t i = 0; i < r.size(); ++i) s += r[i] * basis_[i];
    return s;
}

std::vector<CycloNum> subfield_basis(const SubfieldTag& t) {
    const CoeffField& f = t.field();
    const int want = t.degree();
    const auto& ops = f.data()->ops;
    std::vector<CycloNum> out;
    // echelon rows over the prime field for independence tests
    std::vector<std::vector<mpq_class>> rows;
    std::vector<int> pivots;
    auto try_add = [&](const CycloNum& x) {
        std::vector<mpq_class> v = x.coeffs();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            int p = pivots[r];
            if (sgn(v[p]) == 0) continue;
            mpq_class c = v[p];
            for (std::size_t j = 0; j < v.size(); ++j) {
                v[j] -= c * rows[r][j];
                ops.norm(v[j]);
            }
        }
        int p = -1;
        for (std::size_t j = 0; j < v.size(); ++j)
            if (sgn(v[j]) != 0) {
                p = static_cast<int>(j);
                break;
            }
        if (p < 0) return;
        mpq_class inv = ops.inv(v[p]);
        for (auto& c : v) {
            c *= inv;
            ops.norm(c);
        }
        rows.push_back(v);
        pivots.push_back(p);
        out.push_back(x);
    };
    try_add(f.one());
    for (long i = 1; i < f.n() && static_cast<int>(out.size()) < want; ++i) try_add(relative_trace(f.zeta(i), t));
    if (static_cast<int>(out.size()) != want) throw Error(ErrorCode::rank_deficiency, "subfield basis incomplete");
    return out;
}

namespace {

struct NamedRoot {
    long d;
    CycloNum value;
};

std::vector<NamedRoot> available_roots(const CoeffField& f) {
    std::vector<NamedRoot> basic;
    long n = f.n();
    long m = n;
    for (long p = 3; p <= m; p += 2) {
        if (m % p || !is_prime(p)) continue;
        basic.push_back({p_star(p), gauss_sum(f, p)});
    }
    if (n % 4 == 0) basic.push_back({-1, f.zeta(n / 4)});
    if (n % 8 == 0) basic.push_back({2, f.zeta(n / 8) + f.zeta(-n / 8)});
    std::vector<NamedRoot> all;
    const std::size_t b = basic.size();
    for (std::size_t mask = 1; mask < (1u << b); ++mask) {
        long d = 1;
        CycloNum v = f.one();
        for (std::size_t i = 0; i < b; ++i)
            if (mask & (1u << i)) {
                d *= basic[i].d;
                v *= basic[i].value;
            }
        // strip square factors (only 4 can appear from -1*... products of distinct primes)
        all.push_back({d, v});
    }
    std::stable_sort(all.begin(), all.end(), [](const NamedRoot& a, const NamedRoot& b) {
        long aa = a.d < 0 ? -a.d : a.d, bb = b.d < 0 ? -b.d : b.d;
        if (aa != bb) return aa > bb;
        return a.d > b.d;
    });
    return all;
}

} // namespace

std::string subfield_name(const SubfieldTag& t) {
    const CoeffField& f = t.field();
    if (f.kind() == FieldKind::modular) {
        std::ostringstream os;
        os << "F_" << f.characteristic();
        if (t.degree() > 1) os << "^" << t.degree();
        return os.str();
    }
    if (t.degree() == 1) return "Q";
    auto roots = available_roots(f);
    auto stab_of = [&](const std::vector<const NamedRoot*>& rs) {
        std::vector<CycloNum> vals;
        for (auto* r : rs) vals.push_back(r->value);
        return subfield_of_values(f, vals);
    };
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (stab_of({&roots[i]}) == t) return "Q(sqrt(" + std::to_string(roots[i].d) + "))";
    for (std::size_t i = 0; i < roots.size(); ++i)
        for (std::size_t j = i + 1; j < roots.size(); ++j)
            if (stab_of({&roots[i], &roots[j]}) == t)
                return "Q(sqrt(" + std::to_string(roots[i].d) + "),sqrt(" + std::to_string(roots[j].d) + "))";
    if (t == SubfieldTag::whole(f)) return "Q(zeta_" + std::to_string(f.n()) + ")";
    std::ostringstream os;
    os << "Q(zeta_" << f.n() << ")^<";
    auto g = t.generators();
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << ">";
    return os.str();
}

SubfieldTag lift_tag(const SubfieldTag& t, const CoeffField& bigger) {
    const CoeffField& f = t.field();
    if (f.kind() != bigger.kind() || f.characteristic() != bigger.characteristic() || bigger.n() % f.n() != 0)
        throw Error(ErrorCode::field_mismatch, "cannot lift " + f.describe() + " into " + bigger.describe());
    std::vector<long> stab;
    for (long u : bigger.galois_group())
        if (f.n() == 1 || t.contains_aut(u % f.n())) stab.push_back(u);
    return SubfieldTag(bigger, stab);
}

bool same_subfield(const SubfieldTag& a, const SubfieldTag& b) {
    const CoeffField& fa = a.field();
    const CoeffField& fb = b.field();
    if (fa == fb) return a == b;
    long n = fa.n() / gcd_long(fa.n(), fb.n()) * fb.n();
    CoeffField big = CoeffField::make(fa.kind(), n, fa.characteristic());
    return lift_tag(a, big) == lift_tag(b, big);
}

CycloNum embed(const CycloNum& x, const CoeffField& target) {
    const CoeffField& src = x.field();
    if (src == target) return x;
    if (src.kind() != FieldKind::rational || target.kind() != FieldKind::rational || target.n() % src.n() != 0)
        throw Error(ErrorCode::bad_tower, src.describe() + " does not embed in " + target.describe());
    long k = target.n() / src.n();
    CycloNum r = target.zero();
    const auto& c = x.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (sgn(c[i]) == 0) continue;
        r += target.zeta(k * static_cast<long>(i)).scaled(c[i]);
    }
    return r;
}

} // namespace weil
