#include "stiefel/zonal.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "stiefel/errors.hpp"

namespace stiefel {

Rational zonal_unit_value(const Partition& kappa, int d) {
    const int ell = kappa.length();
    if (d < ell) throw std::domain_error("zonal_unit_value: need d >= l(kappa)");
    const int k = kappa.weight();
    if (k == 0) return Rational(1);

    Rational out(BigInt::pow(BigInt(2), static_cast<unsigned>(2 * k)), BigInt(1));
    out *= Rational(BigInt::factorial(static_cast<unsigned>(k)), BigInt(1));
    out *= partitional_shifted_factorial_exact(Rational(d, 2), kappa);
    for (int i = 0; i < ell; ++i)
        for (int j = i + 1; j < ell; ++j)
            out *= Rational(2 * kappa.parts()[i] - 2 * kappa.parts()[j] - (i + 1) + (j + 1));
    for (int i = 0; i < ell; ++i) {
        unsigned f = static_cast<unsigned>(2 * kappa.parts()[i] + ell - (i + 1));
        out /= Rational(BigInt::factorial(f), BigInt(1));
    }
    return out;
}

namespace {

struct PartitionDimKeyHash {
    std::size_t operator()(const std::pair<Partition, int>& k) const {
        return PartitionHash()(k.first) * 31 + static_cast<std::size_t>(k.second);
    }
};

template <typename Fn>
double memoized_f64(const Partition& kappa, int d, Fn&& compute) {
    using Key = std::pair<Partition, int>;
    static std::unordered_map<Key, double, PartitionDimKeyHash> cache;
    static std::mutex mutex;
    Key key{kappa, d};
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double value = compute();
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(std::move(key), value);
    return value;
}

}  // namespace

double zonal_unit_value_f64(const Partition& kappa, int d) {
    return memoized_f64(kappa, d, [&] { return zonal_unit_value(kappa, d).to_double(); });
}

double half_d_pochhammer_f64(const Partition& kappa, int d) {
    // separate template instantiation, so a separate cache from the unit values
    return memoized_f64(kappa, d, [&] {
        return partitional_shifted_factorial_exact(Rational(d, 2), kappa).to_double();
    });
}

Rational monomial_count_at_identity(const Partition& lambda, int d) {
    const int ell = lambda.length();
    if (ell > d) return Rational(0);
    BigInt count(1);
    for (int i = 0; i < ell; ++i) count *= BigInt(d - i);  // falling factorial d!/(d-ell)!
    BigInt dup(1);
    int run = 1;
    for (int i = 1; i <= ell; ++i) {
        if (i < ell && lambda.parts()[i] == lambda.parts()[i - 1]) {
            ++run;
        } else {
            dup *= BigInt::factorial(static_cast<unsigned>(run));
            run = 1;
        }
    }
    return Rational(std::move(count), std::move(dup));
}

namespace {

// Shared per-weight context for the eigenfunction recurrence: the list of
// all partitions of weight k (descending lex) and, for each, its move
// edges. A move adds t units to part i and removes them from part j > i;
// the edge carries the integer numerator factor (l_i + t) - (l_j - t).
// Edges depend only on the source partition, so they are computed once
// per weight and reused by every kappa row.
struct WeightContext {
    std::vector<Partition> lams;
    std::vector<long long> rhos;
    std::vector<std::vector<std::pair<int, int>>> moves;  // (target index, factor)

    explicit WeightContext(int k) {
        lams = enumerate_partitions(k, std::max(k, 1));
        std::unordered_map<Partition, int, PartitionHash> index;
        index.reserve(lams.size() * 2);
        for (std::size_t i = 0; i < lams.size(); ++i) index.emplace(lams[i], static_cast<int>(i));
        rhos.resize(lams.size());
        moves.resize(lams.size());
        std::vector<int> next;
        for (std::size_t li = 0; li < lams.size(); ++li) {
            rhos[li] = rho(lams[li]);
            const std::vector<int>& l = lams[li].parts();
            const int len = static_cast<int>(l.size());
            for (int j = 1; j < len; ++j) {
                for (int i = 0; i < j; ++i) {
                    for (int t = 1; t <= l[j]; ++t) {
                        next.assign(l.begin(), l.end());
                        next[i] += t;
                        next[j] -= t;
                        std::sort(next.begin(), next.end(), std::greater<int>());
                        auto it = index.find(Partition(std::vector<int>(next)));
                        moves[li].emplace_back(it->second, (l[i] + t) - (l[j] - t));
                    }
                }
            }
        }
    }
};

// Coefficients of C_kappa in the monomial basis, indexed per ctx.lams and
// normalized via the closed-form value at the identity.
std::vector<Rational> build_row(const Partition& kappa, int kappa_idx, const WeightContext& ctx) {
    const std::size_t n = ctx.lams.size();
    std::vector<Rational> coeffs(n);
    std::vector<char> nonzero(n, 0);
    coeffs[kappa_idx] = Rational(1);
    nonzero[kappa_idx] = 1;

    const long long rho_kappa = ctx.rhos[kappa_idx];
    for (std::size_t li = kappa_idx + 1; li < n; ++li) {
        const Partition& lambda = ctx.lams[li];
        if (!dominated_by(lambda, kappa)) continue;  // coefficient is zero
        Rational num(0);
        for (const auto& [mu_idx, factor] : ctx.moves[li]) {
            if (mu_idx < kappa_idx) continue;  // mu above kappa in lex: outside the row
            if (!nonzero[static_cast<std::size_t>(mu_idx)]) continue;
            num.add_scaled(factor, coeffs[static_cast<std::size_t>(mu_idx)]);
        }
        if (num.is_zero()) continue;
        long long denom = rho_kappa - ctx.rhos[li];
        if (denom <= 0)
            throw std::logic_error("zonal build: degenerate recurrence denominator at kappa=" +
                                   kappa.to_string() + " lambda=" + lambda.to_string());
        coeffs[li] = num / Rational(denom);
        nonzero[li] = 1;
    }

    // scale so evaluation at I_dref matches the closed-form unit value
    const int dref = std::max(kappa.length(), 2);
    Rational at_identity(0);
    for (std::size_t li = kappa_idx; li < n; ++li)
        if (nonzero[li]) at_identity += coeffs[li] * monomial_count_at_identity(ctx.lams[li], dref);
    Rational scale = zonal_unit_value(kappa, dref) / at_identity;
    for (std::size_t li = kappa_idx; li < n; ++li) {
        if (!nonzero[li]) continue;
        coeffs[li] *= scale;
        if (coeffs[li].signum() < 0)
            throw std::logic_error("zonal build: negative coefficient at kappa=" + kappa.to_string() +
                                   " lambda=" + ctx.lams[li].to_string());
    }
    return coeffs;
}

}  // namespace

ZonalCoeffTable ZonalCoeffTable::build(int max_weight, int max_len, int weight_cap) {
    if (max_weight < 0) throw std::domain_error("ZonalCoeffTable: max_weight must be >= 0");
    if (max_len < 1) throw std::domain_error("ZonalCoeffTable: max_len must be >= 1");
    if (max_weight > weight_cap)
        throw resource_error("ZonalCoeffTable: requested weight " + std::to_string(max_weight) +
                             " exceeds cap " + std::to_string(weight_cap));

    ZonalCoeffTable table;
    table.max_weight_ = max_weight;
    table.max_len_ = max_len;
    for (int k = 0; k <= max_weight; ++k) {
        WeightContext ctx(k);
        // kappa indices within the shared per-weight list
        std::vector<int> kappa_idx;
        for (std::size_t i = 0; i < ctx.lams.size(); ++i)
            if (ctx.lams[i].length() <= max_len) kappa_idx.push_back(static_cast<int>(i));

        std::vector<std::vector<Rational>> rows(kappa_idx.size());
        std::atomic<std::size_t> cursor{0};
        auto worker = [&]() {
            for (std::size_t w = cursor.fetch_add(1); w < kappa_idx.size(); w = cursor.fetch_add(1))
                rows[w] = build_row(ctx.lams[kappa_idx[w]], kappa_idx[w], ctx);
        };
        unsigned nthreads = std::min<unsigned>(std::thread::hardware_concurrency(),
                                               static_cast<unsigned>(kappa_idx.size()));
        if (nthreads > 1 && k >= 12) {
            std::vector<std::thread> pool;
            for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        } else {
            worker();
        }

        for (std::size_t w = 0; w < kappa_idx.size(); ++w) {
            CoeffRow row;
            for (std::size_t li = 0; li < ctx.lams.size(); ++li)
                if (!rows[w][li].is_zero()) row.emplace_back(ctx.lams[li], std::move(rows[w][li]));
            table.rows_.emplace(ctx.lams[kappa_idx[w]], std::move(row));  // already descending lex
        }
    }
    table.finalize();
    return table;
}

void ZonalCoeffTable::finalize() {
    rows_f64_.clear();
    for (const auto& [kappa, row] : rows_) {
        std::vector<double> f(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) f[i] = row[i].second.to_double();
        rows_f64_.emplace(kappa, std::move(f));
    }
}

const std::vector<double>& ZonalCoeffTable::coefficients_f64(const Partition& kappa) const {
    auto it = rows_f64_.find(kappa);
    if (it == rows_f64_.end())
        throw std::domain_error("ZonalCoeffTable: partition " + kappa.to_string() +
                                " outside table");
    return it->second;
}

bool ZonalCoeffTable::covers(const Partition& kappa) const {
    return kappa.weight() <= max_weight_ && kappa.length() <= max_len_;
}

const ZonalCoeffTable::CoeffRow& ZonalCoeffTable::coefficients(const Partition& kappa) const {
    auto it = rows_.find(kappa);
    if (it == rows_.end())
        throw std::domain_error("ZonalCoeffTable: partition " + kappa.to_string() +
                                " outside table (max_weight=" + std::to_string(max_weight_) +
                                ", max_len=" + std::to_string(max_len_) + ")");
    return it->second;
}

void ZonalCoeffTable::save(std::ostream& os) const {
    os << "zonal-table v1\n";
    os << "max_weight " << max_weight_ << "\n";
    os << "max_len " << max_len_ << "\n";
    std::vector<Partition> keys;
    keys.reserve(rows_.size());
    for (const auto& [kappa, row] : rows_) keys.push_back(kappa);
    std::sort(keys.begin(), keys.end(), [](const Partition& a, const Partition& b) {
        if (a.weight() != b.weight()) return a.weight() < b.weight();
        return lex_compare(a, b) == Ordering::greater;
    });
    for (const Partition& kappa : keys) {
        for (const auto& [lambda, c] : coefficients(kappa)) {
            os << kappa.to_string() << " " << lambda.to_string() << " " << c.num().to_string() << " "
               << c.den().to_string() << "\n";
        }
    }
}

ZonalCoeffTable ZonalCoeffTable::load(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "zonal-table v1")
        throw input_error("zonal table: bad header");
    ZonalCoeffTable table;
    std::string tag;
    if (!(is >> tag >> table.max_weight_) || tag != "max_weight")
        throw input_error("zonal table: bad max_weight line");
    if (!(is >> tag >> table.max_len_) || tag != "max_len")
        throw input_error("zonal table: bad max_len line");
    std::string ks, ls, ns, ds;
    while (is >> ks >> ls >> ns >> ds) {
        Partition kappa = Partition::parse(ks);
        Partition lambda = Partition::parse(ls);
        table.rows_[kappa].emplace_back(lambda,
                                        Rational(BigInt::from_string(ns), BigInt::from_string(ds)));
    }
    // rows were saved in descending lex order already; re-sort defensively
    for (auto& [kappa, row] : table.rows_) {
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
            return lex_compare(a.first, b.first) == Ordering::greater;
        });
    }
    // every in-range kappa must be present
    for (int k = 0; k <= table.max_weight_; ++k)
        for (const Partition& kappa : enumerate_partitions(k, table.max_len_))
            if (!table.rows_.count(kappa)) throw input_error("zonal table: missing row " + kappa.to_string());
    table.finalize();
    return table;
}

double monomial_value(const Partition& lambda, std::span<const double> eigs) {
    ZonalEvaluator ev(std::vector<double>(eigs.begin(), eigs.end()));
    return ev.monomial(lambda);
}

namespace {

// remove one part equal to parts[idx]
Partition without_part(const std::vector<int>& parts, std::size_t idx) {
    std::vector<int> next;
    next.reserve(parts.size() - 1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (i != idx) next.push_back(parts[i]);
    return Partition(std::move(next));
}

}  // namespace

Rational monomial_value_exact(const Partition& lambda, std::span<const Rational> eigs) {
    ZonalEvaluatorExact ev(std::vector<Rational>(eigs.begin(), eigs.end()));
    return ev.monomial(lambda);
}

double ZonalEvaluator::monomial_rec(const Partition& lambda, int n) {
    if (lambda.empty()) return 1.0;
    if (lambda.length() > n) return 0.0;
    Key key{lambda, n};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    double xn = eigs_[static_cast<std::size_t>(n) - 1];
    double out = monomial_rec(lambda, n - 1);
    const std::vector<int>& parts = lambda.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0 && parts[i] == parts[i - 1]) continue;
        out += std::pow(xn, parts[i]) * monomial_rec(without_part(parts, i), n - 1);
    }
    memo_.emplace(std::move(key), out);
    return out;
}

double ZonalEvaluator::monomial(const Partition& lambda) {
    return monomial_rec(lambda, static_cast<int>(eigs_.size()));
}

double ZonalEvaluator::zonal(const Partition& kappa, const ZonalCoeffTable& table) {
    const auto& row = table.coefficients(kappa);
    const auto& f64 = table.coefficients_f64(kappa);
    const int n = static_cast<int>(eigs_.size());
    double out = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].first.length() > n) continue;
        out += f64[i] * monomial(row[i].first);
    }
    return out;
}

double eval_zonal(const Partition& kappa, std::span<const double> eigs, const ZonalCoeffTable& table) {
    ZonalEvaluator ev(std::vector<double>(eigs.begin(), eigs.end()));
    return ev.zonal(kappa, table);
}

Rational ZonalEvaluatorExact::monomial_rec(const Partition& lambda, int n) {
    // M_lambda(x_1..x_n) = M_lambda(x_1..x_{n-1})
    //                    + sum over distinct part values v: x_n^v M_{lambda - v}(x_1..x_{n-1})
    if (lambda.empty()) return Rational(1);
    if (lambda.length() > n) return Rational(0);
    Key key{lambda, n};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    const Rational& xn = eigs_[static_cast<std::size_t>(n) - 1];
    Rational out = monomial_rec(lambda, n - 1);
    const std::vector<int>& parts = lambda.parts();
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0 && parts[i] == parts[i - 1]) continue;
        out += Rational::pow(xn, parts[i]) * monomial_rec(without_part(parts, i), n - 1);
    }
    memo_.emplace(std::move(key), out);
    return out;
}

Rational ZonalEvaluatorExact::monomial(const Partition& lambda) {
    return monomial_rec(lambda, static_cast<int>(eigs_.size()));
}

Rational ZonalEvaluatorExact::zonal(const Partition& kappa, const ZonalCoeffTable& table) {
    Rational out(0);
    for (const auto& [lambda, c] : table.coefficients(kappa)) {
        if (lambda.length() > static_cast<int>(eigs_.size())) continue;
        out += c * monomial(lambda);
    }
    return out;
}

Rational eval_zonal_exact(const Partition& kappa, std::span<const Rational> eigs,
                          const ZonalCoeffTable& table) {
    ZonalEvaluatorExact ev(std::vector<Rational>(eigs.begin(), eigs.end()));
    return ev.zonal(kappa, table);
}

}  // namespace stiefel
