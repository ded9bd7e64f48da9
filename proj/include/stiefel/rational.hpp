#pragma once

#include <string>

#include "stiefel/bigint.hpp"

namespace stiefel {

// Exact rational number: reduced, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long num, long long den);
    Rational(BigInt num, BigInt den);

    // Exact conversion: every finite double is a dyadic rational.
    static Rational from_double(double x);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int signum() const { return num_.signum(); }

    Rational& operator+=(const Rational& rhs);
    // *this += f * x with a single reduction pass
    Rational& add_scaled(long long f, const Rational& x);
    Rational& operator-=(const Rational& rhs);
    Rational& operator*=(const Rational& rhs);
    Rational& operator/=(const Rational& rhs);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    int compare(const Rational& rhs) const;
    friend bool operator==(const Rational& a, const Rational& b) { return a.compare(b) == 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.compare(b) != 0; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.compare(b) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.compare(b) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.compare(b) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.compare(b) >= 0; }

    static Rational pow(const Rational& base, int exp);

    double to_double() const;
    std::string to_string() const;  // "num/den", or "num" when den == 1
    static Rational parse(const std::string& s);

private:
    BigInt num_, den_;
    void reduce();
};

}  // namespace stiefel
