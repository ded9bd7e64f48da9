#include "stiefel/bigint.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace stiefel {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    // avoid UB on LLONG_MIN
    uint64_t m = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
    mag_.push_back(static_cast<uint32_t>(m & 0xffffffffu));
    if (m >> 32) mag_.push_back(static_cast<uint32_t>(m >> 32));
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

int BigInt::ucmp(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<uint32_t> BigInt::uadd(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    const auto& lo = a.size() < b.size() ? a : b;
    const auto& hi = a.size() < b.size() ? b : a;
    std::vector<uint32_t> out(hi.size() + 1, 0);
    uint64_t carry = 0;
    for (std::size_t i = 0; i < hi.size(); ++i) {
        uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0u);
        out[i] = static_cast<uint32_t>(s);
        carry = s >> 32;
    }
    out[hi.size()] = static_cast<uint32_t>(carry);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::usub(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    std::vector<uint32_t> out(a.size(), 0);
    int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += static_cast<int64_t>(kBase);
            borrow = 1;
        } else {
            borrow = 0;
        }
        out[i] = static_cast<uint32_t>(s);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

std::vector<uint32_t> BigInt::umul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        uint64_t carry = 0;
        uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            uint64_t s = ai * b[j] + out[i + j] + carry;
            out[i + j] = static_cast<uint32_t>(s);
            carry = s >> 32;
        }
        out[i + b.size()] = static_cast<uint32_t>(carry);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

// Knuth algorithm D on 32-bit limbs.
void BigInt::udivmod(const std::vector<uint32_t>& u, const std::vector<uint32_t>& v,
                     std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
    if (v.empty()) throw std::domain_error("BigInt: division by zero");
    if (ucmp(u, v) < 0) {
        q.clear();
        r = u;
        return;
    }
    if (v.size() == 1) {
        uint64_t d = v[0];
        q.assign(u.size(), 0);
        uint64_t rem = 0;
        for (std::size_t i = u.size(); i-- > 0;) {
            uint64_t cur = (rem << 32) | u[i];
            q[i] = static_cast<uint32_t>(cur / d);
            rem = cur % d;
        }
        while (!q.empty() && q.back() == 0) q.pop_back();
        r.clear();
        if (rem) r.push_back(static_cast<uint32_t>(rem));
        return;
    }

    const int n = static_cast<int>(v.size());
    const int m = static_cast<int>(u.size()) - n;
    const int s = std::countl_zero(v.back());

    std::vector<uint32_t> vn(n);
    for (int i = n - 1; i > 0; --i)
        vn[i] = (s == 0) ? v[i] : ((v[i] << s) | (v[i - 1] >> (32 - s)));
    vn[0] = v[0] << s;

    std::vector<uint32_t> un(u.size() + 1);
    un[u.size()] = (s == 0) ? 0 : (u.back() >> (32 - s));
    for (int i = static_cast<int>(u.size()) - 1; i > 0; --i)
        un[i] = (s == 0) ? u[i] : ((u[i] << s) | (u[i - 1] >> (32 - s)));
    un[0] = u[0] << s;

    q.assign(m + 1, 0);
    for (int j = m; j >= 0; --j) {
        uint64_t num = (static_cast<uint64_t>(un[j + n]) << 32) | un[j + n - 1];
        uint64_t qhat = num / vn[n - 1];
        uint64_t rhat = num % vn[n - 1];
        while (qhat >= kBase ||
               qhat * vn[n - 2] > ((rhat << 32) | un[j + n - 2])) {
            --qhat;
            rhat += vn[n - 1];
            if (rhat >= kBase) break;
        }
        // multiply and subtract
        int64_t borrow = 0;
        uint64_t carry = 0;
        for (int i = 0; i < n; ++i) {
            uint64_t p = qhat * vn[i] + carry;
            carry = p >> 32;
            int64_t t = static_cast<int64_t>(un[i + j]) - borrow - static_cast<int64_t>(p & 0xffffffffu);
            if (t < 0) {
                t += static_cast<int64_t>(kBase);
                borrow = 1;
            } else {
                borrow = 0;
            }
            un[i + j] = static_cast<uint32_t>(t);
        }
        int64_t t = static_cast<int64_t>(un[j + n]) - borrow - static_cast<int64_t>(carry);
        if (t < 0) {
            // qhat was one too large; add divisor back
            --qhat;
            uint64_t c2 = 0;
            for (int i = 0; i < n; ++i) {
                uint64_t s2 = static_cast<uint64_t>(un[i + j]) + vn[i] + c2;
                un[i + j] = static_cast<uint32_t>(s2);
                c2 = s2 >> 32;
            }
            t += static_cast<int64_t>(c2);
        }
        un[j + n] = static_cast<uint32_t>(t);
        q[j] = static_cast<uint32_t>(qhat);
    }
    while (!q.empty() && q.back() == 0) q.pop_back();

    r.assign(n, 0);
    for (int i = 0; i < n - 1; ++i)
        r[i] = (s == 0) ? un[i] : ((un[i] >> s) | (un[i + 1] << (32 - s)));
    r[n - 1] = (s == 0) ? un[n - 1] : (un[n - 1] >> s);
    while (!r.empty() && r.back() == 0) r.pop_back();
}

int BigInt::compare(const BigInt& rhs) const {
    if (sign_ != rhs.sign_) return sign_ < rhs.sign_ ? -1 : 1;
    int c = ucmp(mag_, rhs.mag_);
    return sign_ >= 0 ? c : -c;
}

BigInt BigInt::operator-() const {
    BigInt out = *this;
    out.sign_ = -out.sign_;
    return out;
}

BigInt BigInt::abs() const {
    BigInt out = *this;
    if (out.sign_ < 0) out.sign_ = 1;
    return out;
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
    if (rhs.sign_ == 0) return *this;
    if (sign_ == 0) return *this = rhs;
    if (sign_ == rhs.sign_) {
        mag_ = uadd(mag_, rhs.mag_);
        return *this;
    }
    int c = ucmp(mag_, rhs.mag_);
    if (c == 0) {
        sign_ = 0;
        mag_.clear();
    } else if (c > 0) {
        mag_ = usub(mag_, rhs.mag_);
    } else {
        mag_ = usub(rhs.mag_, mag_);
        sign_ = rhs.sign_;
    }
    return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) {
    BigInt neg = rhs;
    neg.sign_ = -neg.sign_;
    return *this += neg;
}

BigInt& BigInt::operator*=(const BigInt& rhs) {
    if (sign_ == 0 || rhs.sign_ == 0) {
        sign_ = 0;
        mag_.clear();
        return *this;
    }
    mag_ = umul(mag_, rhs.mag_);
    sign_ *= rhs.sign_;
    return *this;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    std::vector<uint32_t> qm, rm;
    udivmod(a.mag_, b.mag_, qm, rm);
    q.mag_ = std::move(qm);
    q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
    r.mag_ = std::move(rm);
    r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt& BigInt::operator/=(const BigInt& rhs) {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    return *this = std::move(q);
}

BigInt& BigInt::operator%=(const BigInt& rhs) {
    BigInt q, r;
    divmod(*this, rhs, q, r);
    return *this = std::move(r);
}

namespace {

std::size_t trailing_zero_bits(const std::vector<uint32_t>& v) {
    std::size_t i = 0;
    while (i < v.size() && v[i] == 0) ++i;
    return 32 * i + std::countr_zero(v[i]);
}

void shr_inplace(std::vector<uint32_t>& v, std::size_t bits) {
    const std::size_t words = bits / 32, rem = bits % 32;
    if (words) v.erase(v.begin(), v.begin() + std::min(words, v.size()));
    if (rem && !v.empty()) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            v[i] = (v[i] >> rem) | (v[i + 1] << (32 - rem));
        v.back() >>= rem;
    }
    while (!v.empty() && v.back() == 0) v.pop_back();
}

// a -= b, requires a >= b
void sub_inplace(std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
    int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int64_t s = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0u);
        if (s < 0) {
            s += static_cast<int64_t>(1ll << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        a[i] = static_cast<uint32_t>(s);
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
}

uint64_t as_u64(const std::vector<uint32_t>& v) {
    uint64_t out = v.empty() ? 0 : v[0];
    if (v.size() > 1) out |= static_cast<uint64_t>(v[1]) << 32;
    return out;
}

std::vector<uint32_t> shl_copy(const std::vector<uint32_t>& v, std::size_t bits) {
    if (v.empty() || bits == 0) return v;
    std::vector<uint32_t> out(bits / 32, 0);
    const std::size_t rem = bits % 32;
    uint64_t carry = 0;
    for (uint32_t limb : v) {
        uint64_t s = (static_cast<uint64_t>(limb) << rem) | carry;
        out.push_back(static_cast<uint32_t>(s));
        carry = s >> 32;
    }
    if (carry) out.push_back(static_cast<uint32_t>(carry));
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace

// Binary gcd on magnitudes; falls to hardware words once operands fit.
BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    std::vector<uint32_t> x = a.mag_, y = b.mag_;
    std::size_t xs = trailing_zero_bits(x), ys = trailing_zero_bits(y);
    std::size_t shift = std::min(xs, ys);
    shr_inplace(x, xs);
    shr_inplace(y, ys);
    while (true) {
        if (x.size() <= 2 && y.size() <= 2) {
            uint64_t g = as_u64(x), h = as_u64(y);
            while (h) {
                uint64_t t = g % h;
                g = h;
                h = t;
            }
            x.clear();
            x.push_back(static_cast<uint32_t>(g));
            if (g >> 32) x.push_back(static_cast<uint32_t>(g >> 32));
            break;
        }
        int c = ucmp(x, y);
        if (c == 0) break;
        if (c > 0) {
            sub_inplace(x, y);
            if (x.empty()) {
                x = std::move(y);
                break;
            }
            shr_inplace(x, trailing_zero_bits(x));
        } else {
            sub_inplace(y, x);
            if (y.empty()) break;
            shr_inplace(y, trailing_zero_bits(y));
        }
    }
    BigInt out;
    out.mag_ = shl_copy(x, shift);
    out.sign_ = 1;
    return out;
}

BigInt BigInt::pow(const BigInt& base, unsigned exp) {
    BigInt out(1), b = base;
    while (exp) {
        if (exp & 1u) out *= b;
        exp >>= 1;
        if (exp) b *= b;
    }
    return out;
}

BigInt BigInt::factorial(unsigned n) {
    BigInt out(1);
    for (unsigned i = 2; i <= n; ++i) out *= BigInt(static_cast<long long>(i));
    return out;
}

std::size_t BigInt::bit_length() const {
    if (mag_.empty()) return 0;
    return 32 * (mag_.size() - 1) + (32 - std::countl_zero(mag_.back()));
}

double BigInt::to_double() const {
    if (sign_ == 0) return 0.0;
    std::size_t bits = bit_length();
    if (bits <= 63) {
        uint64_t v = mag_[0];
        if (mag_.size() > 1) v |= static_cast<uint64_t>(mag_[1]) << 32;
        return sign_ * static_cast<double>(v);
    }
    // top 64 bits as mantissa
    int shift = static_cast<int>(bits) - 64;
    uint64_t top = 0;
    for (int b = 0; b < 64; ++b) {
        std::size_t pos = shift + 63 - b;  // descending bit positions
        uint32_t limb = mag_[pos / 32];
        uint64_t bit = (limb >> (pos % 32)) & 1u;
        top = (top << 1) | bit;
    }
    return sign_ * std::ldexp(static_cast<double>(top), shift);
}

bool BigInt::to_int64(long long& out) const {
    if (bit_length() > 63) return false;
    uint64_t v = mag_.empty() ? 0 : mag_[0];
    if (mag_.size() > 1) v |= static_cast<uint64_t>(mag_[1]) << 32;
    out = sign_ * static_cast<long long>(v);
    return true;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<uint32_t> chunks;  // base 10^9, little-endian
    std::vector<uint32_t> cur = mag_;
    while (!cur.empty()) {
        uint64_t rem = 0;
        for (std::size_t i = cur.size(); i-- > 0;) {
            uint64_t x = (rem << 32) | cur[i];
            cur[i] = static_cast<uint32_t>(x / 1000000000u);
            rem = x % 1000000000u;
        }
        while (!cur.empty() && cur.back() == 0) cur.pop_back();
        chunks.push_back(static_cast<uint32_t>(rem));
    }
    std::string out = sign_ < 0 ? "-" : "";
    out += std::to_string(chunks.back());
    for (std::size_t i = chunks.size() - 1; i-- > 0;) {
        std::string part = std::to_string(chunks[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

BigInt BigInt::from_string(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("BigInt: empty string");
    int sign = 1;
    std::size_t i = 0;
    if (s[0] == '-') {
        sign = -1;
        i = 1;
    } else if (s[0] == '+') {
        i = 1;
    }
    if (i == s.size()) throw std::invalid_argument("BigInt: no digits");
    BigInt out;
    while (i < s.size()) {
        std::size_t take = std::min<std::size_t>(9, s.size() - i);
        uint64_t chunk = 0;
        for (std::size_t j = 0; j < take; ++j, ++i) {
            char c = s[i];
            if (c < '0' || c > '9') throw std::invalid_argument("BigInt: bad digit");
            chunk = chunk * 10 + static_cast<uint64_t>(c - '0');
        }
        static const long long pow10[10] = {1,      10,      100,      1000,      10000,
                                            100000, 1000000, 10000000, 100000000, 1000000000};
        out *= BigInt(pow10[take]);
        out += BigInt(static_cast<long long>(chunk));
    }
    if (sign < 0) out.sign_ = -out.sign_;
    return out;
}

}  // namespace stiefel
