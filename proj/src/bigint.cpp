#include "frevival/bigint.hpp"

#include <algorithm>
#include <cmath>

#include "frevival/errors.hpp"

namespace frevival {

BigInt::BigInt(std::int64_t v) {
    if (v == 0) return;
    sign_ = v > 0 ? 1 : -1;
    std::uint64_t mag = v > 0 ? static_cast<std::uint64_t>(v)
                              : ~static_cast<std::uint64_t>(v) + 1;  // safe for INT64_MIN
    while (mag) {
        mag_.push_back(static_cast<std::uint32_t>(mag & 0xffffffffu));
        mag >>= 32;
    }
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(std::max(a.size(), b.size()) + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::uint64_t sum = carry;
        if (i < a.size()) sum += a[i];
        if (i < b.size()) sum += b[i];
        out[i] = static_cast<std::uint32_t>(sum & 0xffffffffu);
        carry = sum >> 32;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(a[i]) - borrow;
        if (i < b.size()) diff -= b[i];
        if (diff < 0) {
            diff += (static_cast<std::int64_t>(1) << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<std::uint32_t>(diff);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt out;
    if (sign_ == o.sign_) {
        out.sign_ = sign_;
        out.mag_ = add_mag(mag_, o.mag_);
    } else {
        const int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            out.sign_ = sign_;
            out.mag_ = sub_mag(mag_, o.mag_);
        } else {
            out.sign_ = o.sign_;
            out.mag_ = sub_mag(o.mag_, mag_);
        }
    }
    out.trim();
    return out;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (sign_ == 0 || o.sign_ == 0) return BigInt();
    BigInt out;
    out.sign_ = sign_ * o.sign_;
    out.mag_.assign(mag_.size() + o.mag_.size(), 0);
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.mag_.size(); ++j) {
            std::uint64_t cur = out.mag_[i + j] +
                                static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] + carry;
            out.mag_[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
        }
        std::size_t k = i + o.mag_.size();
        while (carry) {
            std::uint64_t cur = out.mag_[k] + carry;
            out.mag_[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
            carry = cur >> 32;
            ++k;
        }
    }
    out.trim();
    return out;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) fail("bigint/DivideByZero", "division by zero");
    if (cmp_mag(a.mag_, b.mag_) < 0) {
        q = BigInt();
        r = a;
        return;
    }

    // Binary long division on magnitudes.
    const std::size_t bits = a.mag_.size() * 32;
    std::vector<std::uint32_t> quot(a.mag_.size(), 0);
    std::vector<std::uint32_t> rem;
    for (std::size_t idx = bits; idx-- > 0;) {
        // rem = rem * 2 + bit(idx)
        std::uint32_t carry = (a.mag_[idx / 32] >> (idx % 32)) & 1u;
        for (std::size_t i = 0; i < rem.size(); ++i) {
            const std::uint32_t next = rem[i] >> 31;
            rem[i] = (rem[i] << 1) | carry;
            carry = next;
        }
        if (carry) rem.push_back(carry);
        if (cmp_mag(rem, b.mag_) >= 0) {
            rem = sub_mag(rem, b.mag_);
            quot[idx / 32] |= (1u << (idx % 32));
        }
    }

    q.mag_ = std::move(quot);
    q.sign_ = a.sign_ * b.sign_;
    q.trim();
    r.mag_ = std::move(rem);
    r.sign_ = a.sign_;
    r.trim();
}

BigInt BigInt::div_exact(const BigInt& b) const {
    BigInt q, r;
    divmod(*this, b, q, r);
    if (!r.is_zero()) fail("bigint/InexactDivision", "division has nonzero remainder");
    return q;
}

bool BigInt::operator==(const BigInt& o) const {
    return sign_ == o.sign_ && mag_ == o.mag_;
}

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    const int c = cmp_mag(mag_, o.mag_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a.sign_ = a.mag_.empty() ? 0 : 1;
    b.sign_ = b.mag_.empty() ? 0 : 1;
    while (!b.is_zero()) {
        BigInt q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

BigInt BigInt::abs(BigInt a) {
    if (a.sign_ < 0) a.sign_ = 1;
    return a;
}

double BigInt::to_double() const {
    double out = 0.0;
    for (std::size_t i = mag_.size(); i-- > 0;) out = out * 4294967296.0 + mag_[i];
    return sign_ < 0 ? -out : out;
}

std::string BigInt::to_string() const {
    if (is_zero()) return "0";
    BigInt cur = abs(*this);
    std::string digits;
    const BigInt ten(10);
    while (!cur.is_zero()) {
        BigInt q, r;
        divmod(cur, ten, q, r);
        digits.push_back(static_cast<char>('0' + (r.is_zero() ? 0 : r.mag_[0])));
        cur = std::move(q);
    }
    if (sign_ < 0) digits.push_back('-');
    std::reverse(digits.begin(), digits.end());
    return digits;
}

std::int64_t BigInt::to_int64() const {
    std::uint64_t mag = 0;
    if (mag_.size() > 1) mag = (static_cast<std::uint64_t>(mag_[1]) << 32);
    if (!mag_.empty()) mag |= mag_[0];
    return sign_ < 0 ? -static_cast<std::int64_t>(mag) : static_cast<std::int64_t>(mag);
}

BigInt isqrt(const BigInt& a) {
    if (a.sign() < 0) fail("bigint/NegativeSqrt", "isqrt of a negative value");
    if (a.is_zero()) return BigInt();
    // Newton iteration seeded from the double estimate.
    BigInt x(static_cast<std::int64_t>(std::max(1.0, std::floor(std::sqrt(a.to_double())))));
    // Guard against seed overflow for very large inputs: double the seed until x^2 >= a/4.
    while ((x * x * BigInt(4)) < a) x = x * BigInt(2);
    for (int iter = 0; iter < 128; ++iter) {
        BigInt q, r;
        BigInt::divmod(a, x, q, r);
        BigInt next = (x + q);
        BigInt two(2), rr;
        BigInt::divmod(next, two, next, rr);
        if (next >= x) break;
        x = std::move(next);
    }
    while (x * x > a) x = x - BigInt(1);
    while ((x + BigInt(1)) * (x + BigInt(1)) <= a) x = x + BigInt(1);
    return x;
}

}  // namespace frevival
