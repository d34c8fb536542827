#pragma once

// Small independent reference computations. Nothing here calls into weil_core
// except to build the objects being compared.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace oracle {

inline long powmod(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    if (b < 0) b += m;
    for (; e > 0; e >>= 1, b = b * b % m)
        if (e & 1) r = r * b % m;
    return r;
}

// Euler's criterion.
inline int legendre(long a, long p) {
    long r = powmod(a, (p - 1) / 2, p);
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

// Cyclotomic polynomial by repeated exact division of x^n - 1.
inline std::vector<long> cyclotomic(long n) {
    std::vector<long> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (long d = 1; d < n; ++d) {
        if (n % d) continue;
        std::vector<long> den = cyclotomic(d);
        std::vector<long> q(num.size() - den.size() + 1, 0);
        std::vector<long> r = num;
        for (long i = static_cast<long>(q.size()) - 1; i >= 0; --i) {
            q[i] = r[i + den.size() - 1];
            for (std::size_t k = 0; k < den.size(); ++k) r[i + k] -= q[i] * den[k];
        }
        num = q;
    }
    return num;
}

inline std::uint64_t sp_order(long q, int m) {
    std::uint64_t r = 1;
    for (int i = 0; i < m * m; ++i) r *= q;
    for (int i = 1; i <= m; ++i) {
        std::uint64_t t = 1;
        for (int k = 0; k < 2 * i; ++k) t *= q;
        r *= t - 1;
    }
    return r;
}

inline int val(mpz_class x, long p, mpz_class& unit) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    unit = x;
    return v;
}

// Closed forms for (a, b)_v with a, b nonzero integers; v = 0 is infinity.
inline int hilbert(const mpz_class& a, const mpz_class& b, long v) {
    if (v == 0) return (a < 0 && b < 0) ? -1 : 1;
    mpz_class u, w;
    int al = val(a, v, u), be = val(b, v, w);
    if (v != 2) {
        int s = ((al * be) % 2 && v % 4 == 3) ? -1 : 1;
        long um = mpz_class(u % v).get_si(), wm = mpz_class(w % v).get_si();
        if (um < 0) um += v;
        if (wm < 0) wm += v;
        if (be % 2) s *= legendre(um, v);
        if (al % 2) s *= legendre(wm, v);
        return s;
    }
    auto m8 = [](const mpz_class& x) {
        long r = mpz_class(x % 8).get_si();
        return r < 0 ? r + 8 : r;
    };
    long u8 = m8(u), w8 = m8(w);
    auto eps = [](long x) { return ((x - 1) / 2) % 2; };
    auto omg = [](long x) { return ((x * x - 1) / 8) % 2; };
    long e = eps(u8) * eps(w8) + al * omg(w8) + be * omg(u8);
    return e % 2 ? -1 : 1;
}

// Brute force for odd v (keep a, b small, the search is quadratic in v^k): does a x^2 + b y^2 = z^2 have a primitive solution
// modulo v^k for every k? Checked at k = 2 val(4ab) + 3, enough by Hensel.
inline int hilbert_brute(long a, long b, long v) {
    mpz_class ua, ub;
    int k = 2 * (val(mpz_class(4 * a * b), v, ua)) + 3;
    long M = 1;
    for (int i = 0; i < k; ++i) M *= v;
    auto md = [&](long x) { return ((x % M) + M) % M; };
    std::vector<std::vector<long>> roots(M);
    for (long z = 0; z < M; ++z) roots[z * z % M].push_back(z);
    for (long x = 0; x < M; ++x)
        for (long y = 0; y < M; ++y) {
            long t = md(a * (x * x % M) + b * (y * y % M));
            for (long z : roots[t])
                if (x % v || y % v || z % v) return 1;
        }
    return -1;
}

} // namespace oracle
