#include "stiefel/partitions.hpp"

#include <stdexcept>

#include "stiefel/errors.hpp"

namespace stiefel {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw input_error("Partition: negative part");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw input_error("Partition: parts must be weakly decreasing");
        if (parts_[i] == 0) throw input_error("Partition: interior zero part");
    }
    for (int v : parts_) weight_ += v;
}

std::string Partition::to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(parts_[i]);
    }
    return out + "]";
}

Partition Partition::parse(const std::string& s) {
    std::size_t start = s.find('[');
    std::size_t end = s.find(']');
    if (start == std::string::npos || end == std::string::npos || end < start)
        throw input_error("Partition: expected bracketed list like [3,1,1]");
    std::vector<int> parts;
    std::size_t i = start + 1;
    while (i < end) {
        if (s[i] == ',' || s[i] == ' ') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < end && s[j] != ',' && s[j] != ' ') ++j;
        parts.push_back(std::stoi(s.substr(i, j - i)));
        i = j;
    }
    return Partition(std::move(parts));
}

Ordering lex_compare(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight())
        throw std::domain_error("lex_compare: partitions must have equal weight");
    int n = std::max(a.length(), b.length());
    for (int i = 0; i < n; ++i) {
        if (a.part(i) != b.part(i)) return a.part(i) < b.part(i) ? Ordering::less : Ordering::greater;
    }
    return Ordering::equal;
}

bool dominated_by(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight())
        throw std::domain_error("dominated_by: partitions must have equal weight");
    long long sa = 0, sb = 0;
    int n = std::max(a.length(), b.length());
    for (int i = 0; i < n; ++i) {
        sa += a.part(i);
        sb += b.part(i);
        if (sa > sb) return false;
    }
    return true;
}

namespace {

void enumerate_rec(int remaining, int max_part, int slots, std::vector<int>& cur,
                   std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (slots == 0) return;
    int lo = (remaining + slots - 1) / slots;  // smallest feasible first part
    for (int first = std::min(remaining, max_part); first >= lo; --first) {
        cur.push_back(first);
        enumerate_rec(remaining - first, first, slots - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int k, int max_len) {
    if (k < 0) throw std::domain_error("enumerate_partitions: negative weight");
    if (max_len < 1) throw std::domain_error("enumerate_partitions: max_len must be >= 1");
    std::vector<Partition> out;
    std::vector<int> cur;
    enumerate_rec(k, k, max_len, cur, out);
    return out;
}

double shifted_factorial(double a, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) out *= a + i;
    return out;
}

Rational shifted_factorial_exact(const Rational& a, int k) {
    Rational out(1);
    for (int i = 0; i < k; ++i) out *= a + Rational(i);
    return out;
}

double partitional_shifted_factorial(double a, const Partition& kappa) {
    double out = 1.0;
    for (int i = 0; i < kappa.length(); ++i)
        out *= shifted_factorial(a - 0.5 * i, kappa.parts()[i]);
    return out;
}

Rational partitional_shifted_factorial_exact(const Rational& a, const Partition& kappa) {
    Rational out(1);
    for (int i = 0; i < kappa.length(); ++i)
        out *= shifted_factorial_exact(a - Rational(i, 2), kappa.parts()[i]);
    return out;
}

long long rho(const Partition& kappa) {
    long long out = 0;
    for (int i = 0; i < kappa.length(); ++i) {
        long long ki = kappa.parts()[i];
        out += ki * (ki - (i + 1));
    }
    return out;
}

}  // namespace stiefel
