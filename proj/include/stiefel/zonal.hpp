#pragma once

#include <iosfwd>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "stiefel/partitions.hpp"
#include "stiefel/rational.hpp"

namespace stiefel {

// Exact coefficients c_{kappa,lambda} of the zonal polynomial
//   C_kappa = sum_{lambda <= kappa} c_{kappa,lambda} M_lambda
// in the monomial symmetric basis. Built once, immutable afterwards.
//
// Coefficients come from the Laplace-Beltrami eigenfunction recurrence:
// within a fixed kappa, c_{kappa,lambda} is assembled from higher-in-lex
// coefficients via moves of t units from part j to part i, with
// denominator rho_kappa - rho_lambda; the per-kappa scale is then fixed
// so that evaluation at I_d (d = max(l(kappa), 2)) reproduces the
// closed-form product C_kappa(I_d). The trace identity is therefore an
// independent cross-check of the build, not an input to it.
class ZonalCoeffTable {
public:
    using CoeffRow = std::vector<std::pair<Partition, Rational>>;  // descending lex, nonzero only

    static constexpr int kDefaultWeightCap = 30;

    static ZonalCoeffTable build(int max_weight, int max_len, int weight_cap = kDefaultWeightCap);

    int max_weight() const { return max_weight_; }
    int max_len() const { return max_len_; }

    bool covers(const Partition& kappa) const;
    const CoeffRow& coefficients(const Partition& kappa) const;  // domain_error when absent
    // binary64 images of the same row, for floating evaluation
    const std::vector<double>& coefficients_f64(const Partition& kappa) const;

    void save(std::ostream& os) const;
    static ZonalCoeffTable load(std::istream& is);

private:
    int max_weight_ = -1;
    int max_len_ = 0;
    std::unordered_map<Partition, CoeffRow, PartitionHash> rows_;
    std::unordered_map<Partition, std::vector<double>, PartitionHash> rows_f64_;
    void finalize();
};

// C_kappa(I_d) as an exact rational, from the closed product formula.
Rational zonal_unit_value(const Partition& kappa, int d);

// Memoized binary64 images of C_kappa(I_d) and (d/2)_kappa; the series
// evaluators hit these once per partition per degree.
double zonal_unit_value_f64(const Partition& kappa, int d);
double half_d_pochhammer_f64(const Partition& kappa, int d);

// Monomial symmetric function M_lambda evaluated at a spectrum;
// empty sum (zero) when l(lambda) exceeds the number of eigenvalues.
double monomial_value(const Partition& lambda, std::span<const double> eigs);
Rational monomial_value_exact(const Partition& lambda, std::span<const Rational> eigs);

// M_lambda(I_d): the number of distinct monomials, as an exact rational.
Rational monomial_count_at_identity(const Partition& lambda, int d);

double eval_zonal(const Partition& kappa, std::span<const double> eigs, const ZonalCoeffTable& table);
Rational eval_zonal_exact(const Partition& kappa, std::span<const Rational> eigs,
                          const ZonalCoeffTable& table);

// Memoizes monomial values for a fixed spectrum across many partitions;
// the cheap way to sweep all kappa of a series degree.
class ZonalEvaluator {
public:
    explicit ZonalEvaluator(std::vector<double> eigs) : eigs_(std::move(eigs)) {}

    double monomial(const Partition& lambda);
    double zonal(const Partition& kappa, const ZonalCoeffTable& table);

private:
    struct Key {
        Partition lambda;
        int n;
        bool operator==(const Key& rhs) const { return n == rhs.n && lambda == rhs.lambda; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return PartitionHash()(k.lambda) * 31 + static_cast<std::size_t>(k.n);
        }
    };
    double monomial_rec(const Partition& lambda, int n);

    std::vector<double> eigs_;
    std::unordered_map<Key, double, KeyHash> memo_;
};

// Exact-arithmetic counterpart of ZonalEvaluator.
class ZonalEvaluatorExact {
public:
    explicit ZonalEvaluatorExact(std::vector<Rational> eigs) : eigs_(std::move(eigs)) {}

    Rational monomial(const Partition& lambda);
    Rational zonal(const Partition& kappa, const ZonalCoeffTable& table);

private:
    struct Key {
        Partition lambda;
        int n;
        bool operator==(const Key& rhs) const { return n == rhs.n && lambda == rhs.lambda; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            return PartitionHash()(k.lambda) * 31 + static_cast<std::size_t>(k.n);
        }
    };
    Rational monomial_rec(const Partition& lambda, int n);

    std::vector<Rational> eigs_;
    std::unordered_map<Key, Rational, KeyHash> memo_;
};

}  // namespace stiefel
