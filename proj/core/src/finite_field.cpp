#include "weil/finite_field.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "weil/field.hpp"

namespace weil {

namespace {

using IPoly = std::vector<long>; // low degree first, coefficients in [0, p)

void itrim(IPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

IPoly imod(IPoly a, const IPoly& b, long p) {
    itrim(a);
    long inv_lead = mod_inverse(b.back(), p);
    while (a.size() >= b.size()) {
        long c = a.back() * inv_lead % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        itrim(a);
    }
    return a;
}

bool irreducible(const IPoly& g, long p) {
    const int d = static_cast<int>(g.size()) - 1;
    if (d <= 1) return true;
    // trial division by every monic polynomial of degree 1..d/2
    for (int k = 1; k <= d / 2; ++k) {
        long total = 1;
        for (int i = 0; i < k; ++i) total *= p;
        for (long idx = 0; idx < total; ++idx) {
            IPoly h(k + 1, 0);
            long t = idx;
            for (int i = 0; i < k; ++i) {
                h[i] = t % p;
                t /= p;
            }
            h[k] = 1;
            if (imod(g, h, p).empty()) return false;
        }
    }
    return true;
}

} // namespace

const FqField& FqField::get(long p, int f) {
    static std::mutex mtx;
    static std::map<std::pair<long, int>, std::unique_ptr<FqField>> reg;
    if (p == 2 || !is_prime(p)) throw Error(ErrorCode::config_invalid, "p must be an odd prime");
    if (f < 1) throw Error(ErrorCode::config_invalid, "f must be positive");
    long q = 1;
    for (int i = 0; i < f; ++i) {
        q *= p;
        if (q > 2048) throw Error(ErrorCode::too_large, "finite field larger than 2048 elements");
    }
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(p, f);
    auto it = reg.find(key);
    if (it != reg.end()) return *it->second;
    auto* fld = new FqField(p, f);
    reg.emplace(key, std::unique_ptr<FqField>(fld));
    return *fld;
}

FqField::FqField(long p, int f) : p_(p), f_(f) {
    q_ = 1;
    for (int i = 0; i < f; ++i) q_ *= p;
    // least monic irreducible, coefficient of x^{f-1} most significant
    for (long idx = 0;; ++idx) {
        IPoly g(f + 1, 0);
        long t = idx;
        for (int i = 0; i < f; ++i) {
            g[i] = t % p;
            t /= p;
        }
        g[f] = 1;
        if (irreducible(g, p)) {
            modulus_ = g;
            break;
        }
    }
    auto to_poly = [&](long v) {
        IPoly a(f, 0);
        for (int i = 0; i < f; ++i) {
            a[i] = v % p;
            v /= p;
        }
        return a;
    };
    auto to_index = [&](const IPoly& a) {
        long v = 0, w = 1;
        for (int i = 0; i < f; ++i) {
            v += (i < static_cast<int>(a.size()) ? a[i] : 0) * w;
            w *= p;
        }
        return static_cast<Fq>(v);
    };
    const std::size_t qq = static_cast<std::size_t>(q_);
    add_.resize(qq * qq);
    mul_.resize(qq * qq);
    neg_.resize(qq);
    std::vector<IPoly> polys(qq);
    for (std::size_t a = 0; a < qq; ++a) polys[a] = to_poly(static_cast<long>(a));
    for (std::size_t a = 0; a < qq; ++a) {
        IPoly n(f);
        for (int i = 0; i < f; ++i) n[i] = (p - polys[a][i]) % p;
        neg_[a] = to_index(n);
        for (std::size_t b = 0; b < qq; ++b) {
            IPoly s(f);
            for (int i = 0; i < f; ++i) s[i] = (polys[a][i] + polys[b][i]) % p;
            add_[a * qq + b] = to_index(s);
            if (b < a) {
                mul_[a * qq + b] = mul_[b * qq + a];
                continue;
            }
            IPoly pr(2 * f - 1, 0);
            for (int i = 0; i < f; ++i)
                for (int j = 0; j < f; ++j) pr[i + j] = (pr[i + j] + polys[a][i] * polys[b][j]) % p;
            mul_[a * qq + b] = to_index(imod(pr, modulus_, p));
        }
    }
    inv_.assign(qq, 0);
    for (std::size_t a = 1; a < qq; ++a)
        for (std::size_t b = 1; b < qq; ++b)
            if (mul_[a * qq + b] == 1) {
                inv_[a] = static_cast<Fq>(b);
                break;
            }
    leg_.assign(qq, 0);
    for (std::size_t a = 1; a < qq; ++a) leg_[mul_[a * qq + a]] = 1;
    for (std::size_t a = 1; a < qq; ++a)
        if (!leg_[a]) leg_[a] = -1;
    trace_.assign(qq, 0);
    for (std::size_t a = 0; a < qq; ++a) {
        Fq x = static_cast<Fq>(a), s = 0;
        for (int i = 0; i < f; ++i) {
            s = add(s, x);
            x = pow(x, p);
        }
        trace_[a] = static_cast<long>(s); // lies in F_p, so index < p
    }
    for (std::size_t a = 1; a < qq; ++a)
        if (order(static_cast<Fq>(a)) == q_ - 1) {
            gen_ = static_cast<Fq>(a);
            break;
        }
}

Fq FqField::from_int(long v) const { return static_cast<Fq>(((v % p_) + p_) % p_); }

Fq FqField::inv(Fq a) const {
    if (a == 0) throw Error(ErrorCode::zero_input, "inverse of zero in F_q");
    return inv_[a];
}

Fq FqField::pow(Fq a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    Fq r = 1, b = a;
    while (e > 0) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

long FqField::trace(Fq a) const { return trace_[a]; }

int FqField::legendre(Fq a) const {
    if (a == 0) throw Error(ErrorCode::zero_input, "legendre symbol of zero");
    return leg_[a];
}

std::optional<Fq> FqField::sqrt(Fq a) const {
    for (Fq x = 0; x < static_cast<Fq>(q_); ++x)
        if (mul(x, x) == a) return x;
    return std::nullopt;
}

long FqField::order(Fq a) const {
    if (a == 0) throw Error(ErrorCode::zero_input, "order of zero");
    long k = 1;
    Fq x = a;
    while (x != 1) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::vector<Fq> FqField::prime_basis() const {
    std::vector<Fq> b;
    long w = 1;
    for (int i = 0; i < f_; ++i) {
        b.push_back(static_cast<Fq>(w));
        w *= p_;
    }
    return b;
}

std::vector<long> FqField::coeffs(Fq a) const {
    std::vector<long> c(f_);
    long v = a;
    for (int i = 0; i < f_; ++i) {
        c[i] = v % p_;
        v /= p_;
    }
    return c;
}

std::string FqField::str(Fq a) const {
    if (f_ == 1) return std::to_string(a);
    std::ostringstream os;
    auto c = coeffs(a);
    bool first = true;
    for (int i = f_ - 1; i >= 0; --i) {
        if (!c[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) os << c[i];
        else {
            if (c[i] != 1) os << c[i] << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
    }
    if (first) os << "0";
    return os.str();
}

} // namespace weil
