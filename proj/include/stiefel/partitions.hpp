#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stiefel/rational.hpp"

namespace stiefel {

// Integer partition: weakly decreasing positive parts, trailing zeros
// stripped. The empty partition has weight 0 and length 0.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    int weight() const { return weight_; }
    int length() const { return static_cast<int>(parts_.size()); }
    const std::vector<int>& parts() const { return parts_; }
    int part(int i) const {  // 0-based, 0 beyond the length
        return i < static_cast<int>(parts_.size()) ? parts_[i] : 0;
    }
    bool empty() const { return parts_.empty(); }

    bool operator==(const Partition& rhs) const { return parts_ == rhs.parts_; }

    std::string to_string() const;                   // "[3,1,1]", "[]"
    static Partition parse(const std::string& s);    // accepts "[3,1,1]" or "k=[3,1,1]"

private:
    std::vector<int> parts_;
    int weight_ = 0;
};

struct PartitionHash {
    std::size_t operator()(const Partition& p) const {
        std::size_t h = 0x9e3779b97f4a7c15ull;
        for (int v : p.parts()) h = h * 1099511628211ull ^ static_cast<std::size_t>(v);
        return h;
    }
};

enum class Ordering { less, equal, greater };

// Lexicographic comparison of equal-weight partitions.
Ordering lex_compare(const Partition& a, const Partition& b);

// True when a is dominated by b (prefix sums of a never exceed b's).
// Requires equal weights; dominance implies a <= b lexicographically.
bool dominated_by(const Partition& a, const Partition& b);

// All partitions of weight k with length <= max_len, descending lexicographic.
std::vector<Partition> enumerate_partitions(int k, int max_len);

// (a)_k = a (a+1) ... (a+k-1)
double shifted_factorial(double a, int k);
Rational shifted_factorial_exact(const Rational& a, int k);

// (a)_kappa = prod_i (a - (i-1)/2)_{kappa_i}
double partitional_shifted_factorial(double a, const Partition& kappa);
Rational partitional_shifted_factorial_exact(const Rational& a, const Partition& kappa);

// rho_kappa = sum_i kappa_i (kappa_i - i), 1-based i; eigenvalue label of
// the zonal coefficient recurrence.
long long rho(const Partition& kappa);

}  // namespace stiefel
