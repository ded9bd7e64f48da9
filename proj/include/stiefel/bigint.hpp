#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stiefel {

// Arbitrary-precision signed integer on base-2^32 limbs (little-endian).
// Sized for exact zonal-table arithmetic: operands stay below a few
// thousand bits, so schoolbook algorithms are used throughout.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_string(std::string_view s);
    static BigInt factorial(unsigned n);
    static BigInt pow(const BigInt& base, unsigned exp);
    static BigInt gcd(const BigInt& a, const BigInt& b);  // nonnegative result

    bool is_zero() const { return sign_ == 0; }
    int signum() const { return sign_; }
    bool is_odd() const { return sign_ != 0 && (mag_[0] & 1u); }
    std::size_t bit_length() const;  // 0 for zero

    BigInt operator-() const;
    BigInt abs() const;

    BigInt& operator+=(const BigInt& rhs);
    BigInt& operator-=(const BigInt& rhs);
    BigInt& operator*=(const BigInt& rhs);
    BigInt& operator/=(const BigInt& rhs);  // truncates toward zero
    BigInt& operator%=(const BigInt& rhs);  // remainder has sign of dividend

    friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
    friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
    friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
    friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
    friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

    // quotient truncated toward zero, |r| < |b|, sign(r) == sign(a)
    static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

    int compare(const BigInt& rhs) const;
    friend bool operator==(const BigInt& a, const BigInt& b) { return a.compare(b) == 0; }
    friend bool operator!=(const BigInt& a, const BigInt& b) { return a.compare(b) != 0; }
    friend bool operator<(const BigInt& a, const BigInt& b) { return a.compare(b) < 0; }
    friend bool operator<=(const BigInt& a, const BigInt& b) { return a.compare(b) <= 0; }
    friend bool operator>(const BigInt& a, const BigInt& b) { return a.compare(b) > 0; }
    friend bool operator>=(const BigInt& a, const BigInt& b) { return a.compare(b) >= 0; }

    // Rounds through the top 64 bits; relative error below 1e-15.
    // Magnitudes beyond double range map to +/-infinity.
    double to_double() const;
    std::string to_string() const;

    // True when the value fits a signed 64-bit integer; fills out if so.
    bool to_int64(long long& out) const;

private:
    int sign_ = 0;                  // -1, 0, +1
    std::vector<uint32_t> mag_;     // no leading zero limbs; empty iff sign_ == 0

    void trim();
    static int ucmp(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> uadd(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static std::vector<uint32_t> usub(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);  // a >= b
    static std::vector<uint32_t> umul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
    static void udivmod(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace stiefel
