#include "stiefel/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>
#include <stdexcept>

#include "stiefel/bounds.hpp"
#include "stiefel/stiefel_mc.hpp"

namespace stiefel {

namespace {

constexpr double kSlack = 1e-12;

CheckResult make_result(std::string name, double lhs, double rhs, std::string witness) {
    CheckResult out;
    out.name = std::move(name);
    out.lhs = lhs;
    out.rhs = rhs;
    out.margin = rhs - lhs;
    out.passed = lhs <= rhs + kSlack * std::max(1.0, std::abs(rhs));
    out.witness = std::move(witness);
    return out;
}

CheckResult make_exact_result(std::string name, const Rational& lhs, const Rational& rhs,
                              std::string witness) {
    CheckResult out;
    out.name = std::move(name);
    out.lhs = lhs.to_double();
    out.rhs = rhs.to_double();
    out.margin = out.rhs - out.lhs;
    out.passed = lhs <= rhs;  // exact comparison, no slack needed
    out.witness = std::move(witness);
    return out;
}

double sqrt_d_ratio_product(const Partition& kappa, int d, int p) {
    // prod_{i=1}^p (sqrt(d)/2)_{p kappa_i} / (d/2)_{p kappa_i}; parts beyond
    // l(kappa) contribute empty products
    double sq = std::sqrt(static_cast<double>(d));
    double out = 1.0;
    for (int i = 0; i < std::min(p, kappa.length()); ++i) {
        int r = p * kappa.parts()[i];
        out *= shifted_factorial(0.5 * sq, r) / shifted_factorial(0.5 * d, r);
    }
    return out;
}

}  // namespace

CheckResult check_factorial_lemma(const std::vector<int>& a, int p) {
    if (static_cast<int>(a.size()) != p) throw std::domain_error("factorial lemma: need |a| == p");
    int sum = 0;
    for (int v : a) {
        if (v < 0) throw std::domain_error("factorial lemma: entries must be nonnegative");
        sum += v;
    }
    if (sum < 2) throw std::domain_error("factorial lemma: need a_1 + ... + a_p >= 2");
    BigInt lhs_exact(1);
    for (int v : a) lhs_exact *= BigInt::factorial(static_cast<unsigned>(p * v));
    double ap = alpha_p(p);
    double rhs = std::pow(ap, 2.0 * p) * std::pow(static_cast<double>(p), static_cast<double>(p) * sum) *
                 std::pow(BigInt::factorial(static_cast<unsigned>(sum)).to_double(), p);
    std::ostringstream w;
    w << "a=(";
    for (std::size_t i = 0; i < a.size(); ++i) w << (i ? "," : "") << a[i];
    w << "), p=" << p;
    return make_result("factorial_lemma", lhs_exact.to_double(), rhs, w.str());
}

std::pair<CheckResult, CheckResult> check_pochhammer_bounds(const Partition& kappa, int d, int p) {
    const int k = kappa.weight();
    if (k < 2) throw std::domain_error("pochhammer bounds: need |kappa| >= 2");
    if (d < p || p < kappa.length()) throw std::domain_error("pochhammer bounds: need d >= p >= l(kappa)");
    Rational value = partitional_shifted_factorial_exact(Rational(d, 2), kappa);
    Rational lower(BigInt::pow(BigInt(d), static_cast<unsigned>(k)),
                   BigInt::pow(BigInt(2 * p), static_cast<unsigned>(k)));
    Rational upper(BigInt::pow(BigInt(d + k), static_cast<unsigned>(k)),
                   BigInt::pow(BigInt(2), static_cast<unsigned>(k)));
    std::string w = "kappa=" + kappa.to_string() + ", d=" + std::to_string(d) + ", p=" + std::to_string(p);
    return {make_exact_result("pochhammer_lower", lower, value, w),
            make_exact_result("pochhammer_upper", value, upper, w)};
}

CheckResult check_ratio_bound(const Partition& kappa, int d, int p) {
    const int k = kappa.weight();
    if (k < 2) throw std::domain_error("ratio bound: need |kappa| >= 2");
    if (d < p || p < kappa.length()) throw std::domain_error("ratio bound: need d >= p >= l(kappa)");
    double lhs = sqrt_d_ratio_product(kappa, d, p);
    double kfact = BigInt::factorial(static_cast<unsigned>(k)).to_double();
    double inner = alpha_p(p) * std::sqrt(kfact) * std::pow(gamma1(), k) *
                   std::pow(static_cast<double>(p), 0.5 * k) * std::pow(static_cast<double>(d), -0.5 * k);
    double rhs = std::pow(inner, p);
    std::string w = "kappa=" + kappa.to_string() + ", d=" + std::to_string(d) + ", p=" + std::to_string(p);
    CheckResult main = make_result("ratio_bound", lhs, rhs, w);
    // fold in the scalar single-r inequality for each r = p kappa_i
    for (int i = 0; i < kappa.length(); ++i) {
        int r = p * kappa.parts()[i];
        double sq = std::sqrt(static_cast<double>(d));
        double slhs = shifted_factorial(0.5 * sq, r) / shifted_factorial(0.5 * d, r);
        double srhs = std::sqrt(BigInt::factorial(static_cast<unsigned>(r)).to_double()) *
                      std::pow(gamma1(), r) * std::pow(static_cast<double>(d), -0.5 * r);
        if (!(slhs <= srhs + kSlack * std::max(1.0, srhs))) {
            main.passed = false;
            main.witness += " [scalar r=" + std::to_string(r) + " failed]";
        }
    }
    return main;
}

CheckResult check_abs_bound(const Partition& kappa, const SymmetricMatrix& Sigma,
                            const ZonalCoeffTable& table) {
    auto eigs = eigen_sym(Sigma).values;
    std::vector<double> abs_eigs(eigs.size());
    for (std::size_t i = 0; i < eigs.size(); ++i) abs_eigs[i] = std::abs(eigs[i]);
    double lhs = std::abs(eval_zonal(kappa, eigs, table));
    double rhs = eval_zonal(kappa, abs_eigs, table);
    std::ostringstream w;
    w << "kappa=" << kappa.to_string() << ", spectrum=(";
    for (std::size_t i = 0; i < eigs.size(); ++i) w << (i ? "," : "") << eigs[i];
    w << ")";
    return make_result("abs_bound", lhs, rhs, w.str());
}

CheckResult check_zonal_upper(const Partition& kappa, const SymmetricMatrix& Sigma, int p,
                              const ZonalCoeffTable& table) {
    const int d = Sigma.order();
    if (kappa.length() > p || p > d) throw std::domain_error("zonal upper: need l(kappa) <= p <= d");
    auto eigs = eigen_sym(Sigma).values;
    double lhs = std::abs(eval_zonal(kappa, eigs, table));
    double rhs = std::pow(sqrt_d_ratio_product(kappa, d, p), 1.0 / p) *
                 zonal_unit_value(kappa, d).to_double() *
                 std::pow(frobenius_norm(Sigma), kappa.weight());
    std::string w = "kappa=" + kappa.to_string() + ", d=" + std::to_string(d) + ", p=" + std::to_string(p);
    return make_result("zonal_upper", lhs, rhs, w);
}

FkComparison check_fk_bound_and_compare(const Partition& kappa, const SymmetricMatrix& Sigma,
                                        int p, const ZonalCoeffTable& table) {
    const int d = Sigma.order();
    if (kappa.length() != p) throw std::domain_error("fk bound: need l(kappa) == p");
    auto eigs = eigen_sym(Sigma).values;  // descending
    if (eigs.back() <= 0.0) throw std::domain_error("fk bound: Sigma must be positive definite");
    double unit = zonal_unit_value(kappa, d).to_double();
    double fk_rhs = unit;
    for (int j = 0; j < p; ++j) fk_rhs *= std::pow(eigs[j], kappa.parts()[j]);
    double lhs = eval_zonal(kappa, eigs, table);
    double zonal_rhs = std::pow(sqrt_d_ratio_product(kappa, d, p), 1.0 / p) * unit *
                       std::pow(frobenius_norm(Sigma), kappa.weight());
    FkComparison out;
    std::string w = "kappa=" + kappa.to_string() + ", d=" + std::to_string(d) + ", p=" + std::to_string(p);
    out.fk = make_result("fk_bound", lhs, fk_rhs, w);
    out.bound_ratio = zonal_rhs / fk_rhs;
    return out;
}

CheckResult check_zonal_lower(const Partition& kappa, const SymmetricMatrix& Sigma,
                              const ZonalCoeffTable& table) {
    const int d = Sigma.order();
    const int p = kappa.length();
    if (p > d) throw std::domain_error("zonal lower: need l(kappa) <= d");
    auto eigs = eigen_sym(Sigma).values;
    if (eigs.back() <= 0.0) throw std::domain_error("zonal lower: Sigma must be positive definite");
    double rhs = eval_zonal(kappa, eigs, table);  // the larger side
    double lhs = std::pow(1.0 + kappa.weight(), -static_cast<double>(n_dim(d))) *
                 zonal_unit_value(kappa, d).to_double();
    for (int j = 0; j < p; ++j) lhs *= std::pow(eigs[j], kappa.parts()[j]);
    std::string w = "kappa=" + kappa.to_string() + ", d=" + std::to_string(d);
    return make_result("zonal_lower", lhs, rhs, w);
}

CheckResult check_scalar_tightness(const Partition& kappa, int d) {
    const int p = std::max(kappa.length(), 1);
    if (d < p) throw std::domain_error("scalar tightness: need d >= l(kappa)");
    double value = std::pow(sqrt_d_ratio_product(kappa, d, p), 1.0 / p) *
                   std::pow(static_cast<double>(d), 0.5 * kappa.weight());
    std::string w = "kappa=" + kappa.to_string() + ", d=" + std::to_string(d);
    return make_result("scalar_tightness", 1.0, value, w);
}

SymmetricMatrix spiked_sigma(int d, int p, double sigma, double rho, double r) {
    std::vector<double> eigs(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        eigs[static_cast<std::size_t>(j)] =
            j < p ? sigma * std::pow(static_cast<double>(d), 0.5 * r)
                  : rho * std::pow(static_cast<double>(d), -0.5 * (d - p + 1));
    }
    return SymmetricMatrix::diagonal(eigs);
}

namespace {

// keep the aggregate's witness on the thinnest margin
void fold(CheckResult& agg, const CheckResult& one, int& count) {
    ++count;
    if (count == 1) {
        agg = one;
        return;
    }
    agg.passed = agg.passed && one.passed;
    bool worse = (!one.passed && agg.passed) || one.margin < agg.margin;
    if (worse) {
        agg.lhs = one.lhs;
        agg.rhs = one.rhs;
        agg.margin = one.margin;
        agg.witness = one.witness;
    }
}

std::vector<double> random_spectrum(CounterRng& rng, int d, double lo, double hi) {
    std::vector<double> out(static_cast<std::size_t>(d));
    for (double& v : out) v = lo + (hi - lo) * rng.uniform01();
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const VerifySuiteConfig& cfg, const ZonalCoeffTable& table) {
    const int kw = std::min(cfg.max_weight, table.max_weight());
    const int klen = std::min(3, table.max_len());
    int dmax = 0;
    for (int d : cfg.dims) dmax = std::max(dmax, d);

    std::vector<std::function<std::vector<CheckResult>()>> families;

    // factorial product bound: one-part families plus seeded random vectors
    families.push_back([&cfg]() -> std::vector<CheckResult> {
        CheckResult agg;
        int count = 0;
        for (int p = 2; p <= 4; ++p)
            for (int k = 2; k <= 8; ++k) {
                std::vector<int> a(static_cast<std::size_t>(p), 0);
                a[0] = k;
                fold(agg, check_factorial_lemma(a, p), count);
            }
        CounterRng rng(cfg.seed, 101);
        while (count < std::max(cfg.instances, 24)) {
            int p = 2 + static_cast<int>(rng.next_u64() % 3);
            std::vector<int> a(static_cast<std::size_t>(p));
            int sum = 0;
            for (int& v : a) {
                v = static_cast<int>(rng.next_u64() % 5);
                sum += v;
            }
            if (sum < 2) continue;
            fold(agg, check_factorial_lemma(a, p), count);
        }
        agg.name = "factorial_lemma";
        agg.witness += " [" + std::to_string(count) + " instances]";
        return {agg};
    });

    // Pochhammer bounds and the sqrt(d) ratio bound, exact and floating
    families.push_back([&cfg, kw]() -> std::vector<CheckResult> {
        CheckResult lo_agg, up_agg, ratio_agg;
        int lo_n = 0, up_n = 0, ratio_n = 0;
        for (int k = 2; k <= std::max(kw, 2); ++k) {
            for (const auto& kappa : enumerate_partitions(k, 4)) {
                for (int d : cfg.dims) {
                    for (int p = std::max(kappa.length(), 1); p <= std::min(4, d); ++p) {
                        auto [lo, up] = check_pochhammer_bounds(kappa, d, p);
                        fold(lo_agg, lo, lo_n);
                        fold(up_agg, up, up_n);
                        fold(ratio_agg, check_ratio_bound(kappa, d, p), ratio_n);
                    }
                }
            }
        }
        lo_agg.name = "pochhammer_lower";
        up_agg.name = "pochhammer_upper";
        ratio_agg.name = "ratio_bound";
        lo_agg.witness += " [" + std::to_string(lo_n) + " instances]";
        up_agg.witness += " [" + std::to_string(up_n) + " instances]";
        ratio_agg.witness += " [" + std::to_string(ratio_n) + " instances]";
        return {lo_agg, up_agg, ratio_agg};
    });

    // absolute-spectrum bound, randomized indefinite sweep
    families.push_back([&cfg, &table, kw, klen]() -> std::vector<CheckResult> {
        CheckResult agg;
        int count = 0;
        CounterRng rng(cfg.seed, 102);
        while (count < cfg.instances) {
            int d = 2 + static_cast<int>(rng.next_u64() % 5);
            auto spec = random_spectrum(rng, d, -2.0, 2.0);
            SymmetricMatrix sigma = SymmetricMatrix::diagonal(spec);
            for (int k = 1; k <= kw && count < cfg.instances; ++k)
                for (const auto& kappa : enumerate_partitions(k, std::min(klen, d)))
                    fold(agg, check_abs_bound(kappa, sigma, table), count);
        }
        agg.name = "abs_bound";
        agg.witness += " [" + std::to_string(count) + " instances]";
        return {agg};
    });

    // Frobenius-norm zonal upper bound, plus the scalar-matrix tightness trend
    families.push_back([&cfg, &table, kw, klen, dmax]() -> std::vector<CheckResult> {
        std::vector<CheckResult> out;
        CheckResult agg;
        int count = 0;
        CounterRng rng(cfg.seed, 103);
        while (count < cfg.instances) {
            int d = 2 + static_cast<int>(rng.next_u64() % std::min(9, dmax - 1));
            auto spec = random_spectrum(rng, d, -2.0, 2.0);
            SymmetricMatrix sigma = SymmetricMatrix::diagonal(spec);
            for (int k = 1; k <= kw && count < cfg.instances; ++k)
                for (const auto& kappa : enumerate_partitions(k, std::min(klen, d)))
                    for (int p = kappa.length(); p <= std::min(3, d); ++p)
                        fold(agg, check_zonal_upper(kappa, sigma, p, table), count);
        }
        agg.name = "zonal_upper";
        agg.witness += " [" + std::to_string(count) + " instances]";
        out.push_back(agg);

        // both sides asymptotically equal at scalar matrices
        Partition kappa11({1, 1});
        SymmetricMatrix big = SymmetricMatrix::identity(64);
        auto eigs = eigen_sym(big).values;
        double lhs = eval_zonal(kappa11, eigs, table);
        double rhs = std::pow(sqrt_d_ratio_product(kappa11, 64, 2), 0.5) *
                     zonal_unit_value(kappa11, 64).to_double() * std::pow(frobenius_norm(big), 2);
        out.push_back(make_result("zonal_upper_tightness", std::abs(rhs / lhs - 1.0), 0.25,
                                  "kappa=[1,1], Sigma=I_64"));
        return out;
    });

    // Faraut-Koranyi bound, comparison ratio, spiked fixture
    families.push_back([&cfg, &table, kw, klen]() -> std::vector<CheckResult> {
        std::vector<CheckResult> out;
        CheckResult agg;
        int count = 0;
        CounterRng rng(cfg.seed, 104);
        while (count < cfg.instances) {
            int d = 2 + static_cast<int>(rng.next_u64() % 5);
            auto spec = random_spectrum(rng, d, 0.05, 2.0);
            SymmetricMatrix sigma = SymmetricMatrix::diagonal(spec);
            for (int k = 1; k <= kw && count < cfg.instances; ++k)
                for (const auto& kappa : enumerate_partitions(k, std::min(klen, d)))
                    fold(agg, check_fk_bound_and_compare(kappa, sigma, kappa.length(), table).fk,
                         count);
        }
        agg.name = "fk_bound";
        agg.witness += " [" + std::to_string(count) + " instances]";
        out.push_back(agg);

        Partition kappa11({1, 1});
        auto near_scalar = check_fk_bound_and_compare(
            kappa11, SymmetricMatrix::diagonal({1.3, 1.3, 1.3}), 2, table);
        out.push_back(make_result("fk_sharper_near_scalar", 1.0, near_scalar.bound_ratio,
                                  "Sigma=1.3 I_3, kappa=[1,1]"));

        auto spiked = check_fk_bound_and_compare(kappa11, spiked_sigma(64, 2, 1.0, 1.0, 0.5), 2, table);
        out.push_back(make_result("zonal_sharper_spiked", spiked.bound_ratio, 1.0,
                                  "spiked spectrum, d=64, p=2, r=0.5"));
        return out;
    });

    // zonal lower bound, randomized positive definite sweep
    families.push_back([&cfg, &table, kw, klen]() -> std::vector<CheckResult> {
        CheckResult agg;
        int count = 0;
        CounterRng rng(cfg.seed, 105);
        while (count < cfg.instances) {
            int d = 2 + static_cast<int>(rng.next_u64() % 5);
            auto spec = random_spectrum(rng, d, 0.05, 2.0);
            SymmetricMatrix sigma = SymmetricMatrix::diagonal(spec);
            for (int k = 1; k <= kw && count < cfg.instances; ++k)
                for (const auto& kappa : enumerate_partitions(k, std::min(klen, d)))
                    fold(agg, check_zonal_lower(kappa, sigma, table), count);
        }
        agg.name = "zonal_lower";
        agg.witness += " [" + std::to_string(count) + " instances]";
        return {agg};
    });

    // scalar tightness: >= 1 everywhere, decreasing dyadic tail
    families.push_back([&cfg, kw, dmax]() -> std::vector<CheckResult> {
        std::vector<CheckResult> out;
        CheckResult agg;
        int count = 0;
        for (int k = 1; k <= std::min(kw, 4); ++k) {
            for (const auto& kappa : enumerate_partitions(k, 3)) {
                for (int d = std::max(kappa.length(), 1); d <= dmax; ++d)
                    fold(agg, check_scalar_tightness(kappa, d), count);
            }
        }
        agg.name = "scalar_tightness";
        agg.witness += " [" + std::to_string(count) + " instances]";
        out.push_back(agg);

        // the quantity may rise briefly, then must shrink toward 1
        Partition kappa11({1, 1});
        std::vector<double> values;
        for (int j = 2; j <= 8; ++j) values.push_back(check_scalar_tightness(kappa11, 1 << j).rhs);
        std::size_t peak = 0;
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[peak]) peak = i;
        bool monotone_after_peak = peak <= 1;
        for (std::size_t i = peak + 1; i < values.size(); ++i)
            monotone_after_peak = monotone_after_peak && values[i] < values[i - 1];
        CheckResult trend = make_result("scalar_tightness_trend", values.back(),
                                        values[peak], "kappa=[1,1], d=4..256 dyadic");
        trend.passed = trend.passed && monotone_after_peak && values.back() > 1.0 - 1e-12;
        out.push_back(trend);
        return out;
    });

    // independent families run concurrently; aggregation is by name order
    std::vector<std::future<std::vector<CheckResult>>> futures;
    futures.reserve(families.size());
    for (auto& fam : families) futures.push_back(std::async(std::launch::async, fam));
    std::vector<CheckResult> results;
    for (auto& fut : futures)
        for (auto& r : fut.get()) results.push_back(std::move(r));
    std::sort(results.begin(), results.end(),
              [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
    return results;
}

}  // namespace stiefel
