#pragma once

// F_q with q = p^f, p odd, using full addition/multiplication tables.
// Elements are indices sum c_i p^i of their coefficient vectors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weil/error.hpp"

namespace weil {

using Fq = std::uint32_t;

class FqField {
public:
    // Interned; the returned reference stays valid for the process lifetime.
    static const FqField& get(long p, int f);

    long p() const { return p_; }
    int f() const { return f_; }
    long q() const { return q_; }
    // Monic modulus over F_p, low degree first.
    const std::vector<long>& modulus() const { return modulus_; }

    Fq zero() const { return 0; }
    Fq one() const { return 1; }
    Fq from_int(long v) const; // image of v in F_p
    Fq add(Fq a, Fq b) const { return add_[a * q_ + b]; }
    Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
    Fq neg(Fq a) const { return neg_[a]; }
    Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
    Fq inv(Fq a) const;
    Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
    Fq pow(Fq a, long e) const;
    Fq half() const { return inv(from_int(2)); }

    long trace(Fq a) const; // Tr_{F_q/F_p}, in [0, p)
    int legendre(Fq a) const;
    bool is_square(Fq a) const { return a == 0 || legendre(a) == 1; }
    std::optional<Fq> sqrt(Fq a) const; // least root
    Fq generator() const { return gen_; }
    long order(Fq a) const;
    std::vector<Fq> prime_basis() const; // 1, x, ..., x^{f-1}
    std::vector<long> coeffs(Fq a) const;
    bool in_prime_field(Fq a) const { return a < static_cast<Fq>(p_); }
    std::string str(Fq a) const;

private:
    FqField(long p, int f);
    long p_;
    int f_;
    long q_;
    std::vector<long> modulus_;
    std::vector<Fq> add_, mul_, neg_, inv_;
    std::vector<int> leg_;
    std::vector<long> trace_;
    Fq gen_ = 1;
};

} // namespace weil
