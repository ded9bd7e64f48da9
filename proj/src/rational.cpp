#include "stiefel/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace stiefel {

Rational::Rational(long long num, long long den) : num_(num), den_(den) { reduce(); }

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

void Rational::reduce() {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    if (den_.signum() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    BigInt g = BigInt::gcd(num_, den_);
    num_ /= g;
    den_ /= g;
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
    if (x == 0.0) return Rational();
    int e = 0;
    double f = std::frexp(x, &e);           // x = f * 2^e, |f| in [0.5, 1)
    auto m = static_cast<long long>(std::ldexp(f, 53));  // exact integer
    e -= 53;
    BigInt num(m), den(1);
    if (e >= 0)
        num *= BigInt::pow(BigInt(2), static_cast<unsigned>(e));
    else
        den = BigInt::pow(BigInt(2), static_cast<unsigned>(-e));
    return Rational(std::move(num), std::move(den));
}

Rational& Rational::operator+=(const Rational& rhs) {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::add_scaled(long long f, const Rational& x) {
    num_ = num_ * x.den_ + BigInt(f) * x.num_ * den_;
    den_ *= x.den_;
    reduce();
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    num_ = num_ * rhs.den_ - rhs.num_ * den_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    reduce();
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    reduce();
    return *this;
}

Rational Rational::operator-() const {
    Rational out = *this;
    out.num_ = -out.num_;
    return out;
}

int Rational::compare(const Rational& rhs) const {
    return (num_ * rhs.den_).compare(rhs.num_ * den_);
}

Rational Rational::pow(const Rational& base, int exp) {
    if (exp < 0) {
        if (base.is_zero()) throw std::domain_error("Rational: 0 to negative power");
        return Rational(BigInt::pow(base.den_, static_cast<unsigned>(-exp)),
                        BigInt::pow(base.num_, static_cast<unsigned>(-exp)));
    }
    return Rational(BigInt::pow(base.num_, static_cast<unsigned>(exp)),
                    BigInt::pow(base.den_, static_cast<unsigned>(exp)));
}

double Rational::to_double() const {
    if (num_.is_zero()) return 0.0;
    // scale both operands into double range before dividing
    auto nb = static_cast<long long>(num_.bit_length());
    auto db = static_cast<long long>(den_.bit_length());
    if (nb - db > 1100) return num_.signum() > 0 ? HUGE_VAL : -HUGE_VAL;
    if (db - nb > 1100) return 0.0;
    long long sn = std::max(0ll, nb - 512);
    long long sd = std::max(0ll, db - 512);
    BigInt n = num_, d = den_;
    if (sn > 0) n /= BigInt::pow(BigInt(2), static_cast<unsigned>(sn));
    if (sd > 0) d /= BigInt::pow(BigInt(2), static_cast<unsigned>(sd));
    return std::ldexp(n.to_double() / d.to_double(), static_cast<int>(sn - sd));
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt::from_string(s), BigInt(1));
    return Rational(BigInt::from_string(s.substr(0, slash)), BigInt::from_string(s.substr(slash + 1)));
}

}  // namespace stiefel
