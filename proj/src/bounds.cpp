#include "stiefel/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "stiefel/errors.hpp"
#include "stiefel/kahan.hpp"

namespace stiefel {

namespace {
constexpr double kLogHuge = 700.0;  // past this, exp overflows binary64
}

double alpha_p(int p) {
    if (p < 1) throw std::domain_error("alpha_p: p must be >= 1");
    double pd = static_cast<double>(p);
    return std::exp(-(pd - 1.0) / (4.0 * pd) * std::log(2.0 * M_PI) + std::log(pd) / (4.0 * pd));
}

double gamma1() { return 0.5 * (std::sqrt(3.0) + 1.0); }

double c_m(int m) {
    if (m < 1) throw std::domain_error("c_m: m must be >= 1");
    double md = static_cast<double>(m);
    return std::exp(1.0 - md * std::log1p(1.0 / md));
}

long long n_dim(int n) {
    if (n < 1) throw std::domain_error("n_dim: n must be >= 1");
    return static_cast<long long>(n + 2) * (n - 1) / 2;
}

double r_m_series_log(int m, double t) {
    if (m < 1) throw std::domain_error("R_m: m must be >= 1");
    if (t < 0.0) throw std::domain_error("R_m: t must be >= 0");
    if (t == 0.0) return -std::numeric_limits<double>::infinity();
    const double log_t = std::log(t);
    // scan the tail's log-terms; the maximum sits near k ~ t^2
    double log_max = -std::numeric_limits<double>::infinity();
    int k = m;
    std::vector<double> logs;
    for (;; ++k) {
        double lt = k * log_t - 0.5 * std::lgamma(static_cast<double>(k) + 1.0);
        logs.push_back(lt);
        log_max = std::max(log_max, lt);
        // decaying and negligible against the running maximum
        if (static_cast<double>(k) > t * t && lt < log_max - 40.0) break;
        if (k > m + 400000) throw resource_error("R_m: series did not settle");
    }
    KahanSum scaled;
    for (double lt : logs) scaled.add(std::exp(lt - log_max));
    return log_max + std::log(scaled.value());
}

double r_m_series(int m, double t) {
    if (t == 0.0) {
        if (m < 1) throw std::domain_error("R_m: m must be >= 1");
        return 0.0;
    }
    double lg = r_m_series_log(m, t);
    if (lg > kLogHuge)
        throw resource_error("R_m: value overflows binary64; use the log form");
    return std::exp(lg);
}

double r_m_closed_log(int m, double t) {
    if (m < 2) throw std::domain_error("R_m closed form: m must be >= 2");
    if (t < 0.0) throw std::domain_error("R_m closed form: t must be >= 0");
    if (t == 0.0) return -std::numeric_limits<double>::infinity();
    double md = static_cast<double>(m);
    return 0.25 * std::log(4.0 * M_E / M_PI) + (0.5 * md - 0.25) * (1.0 - std::log(md)) +
           md * std::log(t) + 0.5 * c_m(m) * t * t;
}

double r_m_closed(int m, double t) {
    if (t == 0.0) {
        if (m < 2) throw std::domain_error("R_m closed form: m must be >= 2");
        return 0.0;
    }
    double lg = r_m_closed_log(m, t);
    if (lg > kLogHuge)
        throw resource_error("R_m closed form: value overflows binary64; use the log form");
    return std::exp(lg);
}

double t_phi_from_trace(double tr_a_plus, int d, int p, const GrowthParams& g) {
    if (d < p || p < 1) throw std::domain_error("t_phi: need d >= p >= 1");
    return g.gamma0 * gamma1() * std::sqrt(static_cast<double>(p)) * tr_a_plus *
           std::pow(static_cast<double>(d), -0.5 * (1.0 - g.r));
}

double t_phi(const SymmetricMatrix& A, int d, int p, const GrowthParams& g) {
    double tr_a_plus = 0.0;
    for (double v : eigen_sym(A).values) tr_a_plus += std::abs(v);
    return t_phi_from_trace(tr_a_plus, d, p, g);
}

double t_psi(int d, int p, const GrowthParams& g) {
    if (d < p || p < 1) throw std::domain_error("t_psi: need d >= p >= 1");
    return 2.0 * g.gamma0 * gamma1() * std::pow(static_cast<double>(p), 2.5) *
           std::pow(static_cast<double>(d), -0.5 * (3.0 - g.r));
}

double d_phi_for_t(double t, double tr_a_plus, int p, const GrowthParams& g) {
    if (!(t > 0.0)) throw std::domain_error("d_phi_for_t: t must be positive");
    if (g.r >= 1.0) throw std::domain_error("d_phi_for_t: needs r < 1");
    double base = g.gamma0 * gamma1() * std::sqrt(static_cast<double>(p)) * tr_a_plus / t;
    return std::pow(base, 2.0 / (1.0 - g.r));
}

double d_psi_for_t(double t, int p, const GrowthParams& g) {
    if (!(t > 0.0)) throw std::domain_error("d_psi_for_t: t must be positive");
    if (g.r >= 3.0) throw std::domain_error("d_psi_for_t: needs r < 3");
    double base = 2.0 * g.gamma0 * gamma1() * std::pow(static_cast<double>(p), 2.5) / t;
    return std::pow(base, 2.0 / (3.0 - g.r));
}

GrowthCheck check_growth_phi(const SymmetricMatrix& Sigma, int d, const GrowthParams& g) {
    double norm = frobenius_norm(Sigma);
    double scale = std::pow(static_cast<double>(d), 0.5 * g.r);
    return {norm <= g.gamma0 * scale * (1.0 + 1e-12), norm / scale};
}

GrowthCheck check_growth_psi(const RectMatrix& B, int d, const GrowthParams& g) {
    double norm = frobenius_norm(B);
    double scale = std::pow(static_cast<double>(d), 0.25 * g.r);
    double half = 0.5 * norm / scale;
    return {norm <= 2.0 * std::sqrt(g.gamma0) * scale * (1.0 + 1e-12), half * half};
}

namespace {

BoundReport upper_report(int m, double t, int d, int p, const GrowthParams& g, double r_limit,
                         std::optional<bool> growth_satisfied) {
    if (m < 2) throw std::domain_error("upper bound: m must be >= 2");
    BoundReport report;
    report.t = t;
    const double log_ap = std::log(alpha_p(p));
    report.log_upper_series = log_ap + r_m_series_log(m, t);
    report.log_upper_closed = log_ap + r_m_closed_log(m, t);
    report.upper_series = std::exp(report.log_upper_series);
    report.upper_closed = std::exp(report.log_upper_closed);
    report.constants = {alpha_p(p), gamma1(), c_m(m), n_dim(d)};
    report.growth_satisfied = growth_satisfied;
    report.r_in_range = g.r >= 0.0 && g.r < r_limit;
    return report;
}

}  // namespace

BoundReport phi_upper(int m, const SymmetricMatrix& A, int d, int p, const GrowthParams& g,
                      std::optional<bool> growth_satisfied) {
    return upper_report(m, t_phi(A, d, p, g), d, p, g, 1.0, growth_satisfied);
}

BoundReport psi_upper(int m, int d, int p, const GrowthParams& g,
                      std::optional<bool> growth_satisfied) {
    return upper_report(m, t_psi(d, p, g), d, p, g, 3.0, growth_satisfied);
}

double t_psi_corrected(int d, int p, const GrowthParams& g) {
    if (d < p || p < 1) throw std::domain_error("t_psi: need d >= p >= 1");
    return 2.0 * g.gamma0 * gamma1() * static_cast<double>(p) * static_cast<double>(p) *
           std::pow(static_cast<double>(d), -0.5 * (2.0 - g.r));
}

BoundReport psi_upper_corrected(int m, int d, int p, const GrowthParams& g,
                                std::optional<bool> growth_satisfied) {
    return upper_report(m, t_psi_corrected(d, p, g), d, p, g, 2.0, growth_satisfied);
}

namespace {

// ln sum_{k>=m} mu^k / k!  (all terms positive)
double log_exp_tail(double mu, int m) {
    if (mu <= 0.0) return m == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    // factor out the first term; remaining factor is within [1, e^mu]
    double corr = 1.0, term = 1.0;
    for (int j = 1; j < 100000; ++j) {
        term *= mu / (m + j);
        corr += term;
        if (term <= 1e-18 * corr) break;
    }
    return m * std::log(mu) - std::lgamma(static_cast<double>(m) + 1.0) + std::log(corr);
}

void require_positive_definite(const SymmetricMatrix& M, const char* who) {
    auto values = eigen_sym(M).values;
    if (values.back() <= 0.0)
        throw std::domain_error(std::string(who) + ": matrix must be positive definite");
}

double sigma_p_of(const SymmetricMatrix& Sigma, int p) {
    auto values = eigen_sym(Sigma).values;  // descending
    return values[static_cast<std::size_t>(p) - 1];
}

}  // namespace

double phi_lower(int m, const SymmetricMatrix& A, const SymmetricMatrix& Sigma, int d, int p) {
    if (m < 1) throw std::domain_error("phi_lower: m must be >= 1");
    if (A.order() != p || Sigma.order() != d || d < p)
        throw std::domain_error("phi_lower: shape mismatch");
    require_positive_definite(A, "phi_lower");
    require_positive_definite(Sigma, "phi_lower");

    const double nd = static_cast<double>(n_dim(d));
    const double tau = sigma_p_of(Sigma, p) * A.trace();
    // prefactor (2+m)^{+mN_d} (1+m)^{-(1+m)N_d}, the proof's version
    const double log_pref = nd * (m * std::log(2.0 + m) - (1.0 + m) * std::log(1.0 + m));
    const double q = std::exp(nd * std::log((1.0 + m) / (2.0 + m)));
    const double log_sum = log_exp_tail(q * tau, m);
    double lg = log_pref + log_sum;
    return lg < -kLogHuge ? 0.0 : std::exp(lg);
}

double poisson_upper_tail(double mu, int m) {
    if (mu < 0.0) throw std::domain_error("poisson tail: mu must be >= 0");
    if (m <= 0) return 1.0;
    if (mu == 0.0) return 0.0;
    KahanSum below;  // P(W < m)
    for (int k = 0; k < m; ++k)
        below.add(std::exp(k * std::log(mu) - mu - std::lgamma(static_cast<double>(k) + 1.0)));
    double tail = 1.0 - below.value();
    return std::min(1.0, std::max(0.0, tail));
}

double poisson_upper_tail_normal(double mu, int m) {
    if (mu <= 0.0) throw std::domain_error("poisson tail: normal approximation needs mu > 0");
    double z = (static_cast<double>(m) - 0.5 - mu) / std::sqrt(mu);
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

double phi_lower_poisson(int m, const SymmetricMatrix& A, const SymmetricMatrix& Sigma, int d,
                         int p) {
    if (m < 1) throw std::domain_error("phi_lower_poisson: m must be >= 1");
    if (A.order() != p || Sigma.order() != d || d < p)
        throw std::domain_error("phi_lower_poisson: shape mismatch");
    require_positive_definite(A, "phi_lower_poisson");
    require_positive_definite(Sigma, "phi_lower_poisson");

    const double nd = static_cast<double>(n_dim(d));
    const double tau = sigma_p_of(Sigma, p) * A.trace();
    const double log_pref = nd * (m * std::log(2.0 + m) - (1.0 + m) * std::log(1.0 + m));
    const double mu = std::exp(nd * std::log((1.0 + m) / (2.0 + m))) * tau;
    const double tail = poisson_upper_tail(mu, m);
    if (tail <= 0.0) return 0.0;
    double lg = log_pref + mu + std::log(tail);
    return lg < -kLogHuge ? 0.0 : std::exp(lg);
}

PsiLowerBound psi_lower(int m, const RectMatrix& B, int d, int p) {
    if (m < 1) throw std::domain_error("psi_lower: m must be >= 1");
    if (B.rows() != d || B.cols() != p) throw std::domain_error("psi_lower: shape mismatch");
    SymmetricMatrix lambda = langevin_gram(B);
    auto beta = eigen_sym(lambda).values;  // eigenvalues of B'B/4, descending
    const double beta_p = beta.back();
    const double norm_b = frobenius_norm(B);
    // rank check through the smallest singular value of B
    if (!(std::sqrt(std::max(0.0, 4.0 * beta_p)) > 1e-12 * norm_b))
        throw std::domain_error("psi_lower: B must have full rank p");

    const double np = static_cast<double>(n_dim(p));
    const double tau = 2.0 * p * beta_p;
    double log_single = -np * std::log1p(static_cast<double>(m)) -
                        m * std::log(static_cast<double>(d + m)) + m * std::log(tau) -
                        std::lgamma(static_cast<double>(m) + 1.0);
    const double mu = std::exp(np * std::log((1.0 + m) / (2.0 + m))) * tau / M_E;

    PsiLowerBound out;
    out.single_term = log_single < -kLogHuge ? 0.0 : std::exp(log_single);
    // 1F2(1; m+1, d+1+m; mu) >= 1, so the full bound dominates the single term
    double hyper = 1.0;
    {
        double term = 1.0;
        KahanSum sum;
        sum.add(1.0);
        for (int k = 0; k < 100000; ++k) {
            term *= mu / ((m + 1.0 + k) * (d + 1.0 + m + k));
            sum.add(term);
            if (term <= 1e-16 * sum.value()) break;
        }
        hyper = sum.value();
    }
    out.full = out.single_term * hyper;
    return out;
}

namespace {

SelectResult select_m_core(double target_tol, double t, int p, int m_max) {
    if (m_max < 2) throw std::domain_error("select_m: m_max must be >= 2");
    if (!(target_tol > 0.0)) throw std::domain_error("select_m: tolerance must be positive");
    const double log_tol = std::log(target_tol);
    const double log_ap = std::log(alpha_p(p));
    SelectResult out;
    out.min_bound = std::numeric_limits<double>::infinity();
    double best_log = std::numeric_limits<double>::infinity();
    for (int m = 2; m <= m_max; ++m) {
        double lb = t == 0.0 ? -std::numeric_limits<double>::infinity()
                             : log_ap + r_m_closed_log(m, t);
        if (lb < best_log) {
            best_log = lb;
            out.argmin_m = m;
            out.min_bound = std::exp(lb);
        }
        if (!out.found && lb <= log_tol) {
            out.found = true;
            out.m = m;
            out.bound = std::exp(lb);
        }
    }
    return out;
}

}  // namespace

SelectResult select_m_phi(double target_tol, double tr_a_plus, int d, int p,
                          const GrowthParams& g, int m_max) {
    return select_m_core(target_tol, t_phi_from_trace(tr_a_plus, d, p, g), p, m_max);
}

SelectResult select_m_psi(double target_tol, int d, int p, const GrowthParams& g, int m_max) {
    return select_m_core(target_tol, t_psi(d, p, g), p, m_max);
}

}  // namespace stiefel
