#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frevival {

// Arbitrary-precision signed integer; magnitude stored base 2^32 little
// endian. Sized for exact characteristic-polynomial work on desk-scale
// matrices, not for cryptographic workloads.
class BigInt {
public:
    BigInt() = default;
    BigInt(std::int64_t v);  // NOLINT: implicit by design

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }

    BigInt operator-() const;
    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;
    BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
    BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
    BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

    // Truncated division: a = q*b + r with |r| < |b| and sign(r) = sign(a).
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt div_exact(const BigInt& b) const;  // throws if the remainder is nonzero

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator<=(const BigInt& o) const { return !(o < *this); }
    bool operator>=(const BigInt& o) const { return !(*this < o); }

    static BigInt gcd(BigInt a, BigInt b);  // nonnegative
    static BigInt abs(BigInt a);

    double to_double() const;
    std::string to_string() const;
    std::int64_t to_int64() const;  // valid when the value fits

private:
    int sign_ = 0;                    // -1, 0, +1
    std::vector<std::uint32_t> mag_;  // little endian, no leading zeros

    void trim();
    static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);  // a >= b
};

// floor(sqrt(a)) for a >= 0.
BigInt isqrt(const BigInt& a);

}  // namespace frevival
