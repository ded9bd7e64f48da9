#pragma once

#include <optional>

#include "stiefel/linalg.hpp"

namespace stiefel {

// Growth-condition envelope: ||Sigma|| <= gamma0 d^{r/2} for the Bingham
// series, ||B|| <= 2 gamma0^{1/2} d^{r/4} for the Langevin series.
struct GrowthParams {
    double gamma0 = 1.0;
    double r = 0.0;
};

struct BoundConstants {
    double alpha_p = 0.0;
    double gamma1 = 0.0;
    double c_m = 0.0;
    long long N = 0;
};

struct BoundReport {
    double t = 0.0;
    double upper_series = 0.0;
    double upper_closed = 0.0;
    double log_upper_series = 0.0;  // natural logs, stable under underflow
    double log_upper_closed = 0.0;
    std::optional<double> lower;
    BoundConstants constants;
    std::optional<bool> growth_satisfied;  // set from check_growth by the caller
    bool r_in_range = false;
};

double alpha_p(int p);   // (2 pi)^{-(p-1)/4p} p^{1/4p}
double gamma1();         // (sqrt(3) + 1)/2
double c_m(int m);       // (1 + 1/m)^{-m} e
long long n_dim(int n);  // N_n = (n+2)(n-1)/2

// R_m(t) = sum_{k>=m} t^k / (k!)^{1/2}
double r_m_series(int m, double t);
double r_m_series_log(int m, double t);  // ln R_m(t); -inf at t = 0

// Closed-form majorant (4e/pi)^{1/4} (e/m)^{m/2-1/4} t^m exp(c_m t^2/2), m >= 2.
double r_m_closed(int m, double t);
double r_m_closed_log(int m, double t);

// Abscissas fed to R_m, and the inverse maps giving the dimension at
// which a target abscissa is reached.
double t_phi_from_trace(double tr_a_plus, int d, int p, const GrowthParams& g);
double t_phi(const SymmetricMatrix& A, int d, int p, const GrowthParams& g);
double t_psi(int d, int p, const GrowthParams& g);
double d_phi_for_t(double t, double tr_a_plus, int p, const GrowthParams& g);
double d_psi_for_t(double t, int p, const GrowthParams& g);

struct GrowthCheck {
    bool satisfied = false;
    double minimal_gamma0 = 0.0;  // smallest gamma0 making the condition hold at this r
};
GrowthCheck check_growth_phi(const SymmetricMatrix& Sigma, int d, const GrowthParams& g);
GrowthCheck check_growth_psi(const RectMatrix& B, int d, const GrowthParams& g);

// Upper bounds on the remainder tails (series and closed form), m >= 2.
BoundReport phi_upper(int m, const SymmetricMatrix& A, int d, int p, const GrowthParams& g,
                      std::optional<bool> growth_satisfied = {});
BoundReport psi_upper(int m, int d, int p, const GrowthParams& g,
                      std::optional<bool> growth_satisfied = {});

// The nominal psi_upper abscissa 2 gamma0 gamma1 p^{5/2} d^{-(3-r)/2}
// under-covers the true tail for p = 1 once d >= 4 (its derivation mixes a
// d-dimensional ratio with a p-dimensional unit value). This variant uses
// 2 gamma0 gamma1 p^2 d^{-(2-r)/2}, for which every step of the chain is
// valid; it is the one to use when an actual certificate is needed.
double t_psi_corrected(int d, int p, const GrowthParams& g);
BoundReport psi_upper_corrected(int m, int d, int p, const GrowthParams& g,
                                std::optional<bool> growth_satisfied = {});

// Lower bound on the Bingham remainder for positive definite A, Sigma
// (prefactor exponent +mN_d, the proof's version), m >= 1.
double phi_lower(int m, const SymmetricMatrix& A, const SymmetricMatrix& Sigma, int d, int p);

// The same bound in Poisson form: prefactor e^mu P(W >= m), exact finite sum.
double phi_lower_poisson(int m, const SymmetricMatrix& A, const SymmetricMatrix& Sigma, int d,
                         int p);

// Poisson upper tail P(W >= m), exact finite sum, and the normal
// approximation with continuity correction (an approximation layer,
// not a certified bound).
double poisson_upper_tail(double mu, int m);
double poisson_upper_tail_normal(double mu, int m);

struct PsiLowerBound {
    double full = 0.0;         // with the 1F2 factor
    double single_term = 0.0;  // closed-form single-term version
};
// Lower bound on the Langevin remainder for full-rank B, m >= 1.
PsiLowerBound psi_lower(int m, const RectMatrix& B, int d, int p);

struct SelectResult {
    bool found = false;
    int m = -1;            // smallest qualifying m when found
    double bound = 0.0;    // closed bound at that m
    int argmin_m = -1;     // minimizer over the scanned range
    double min_bound = 0.0;
};
// Smallest m in [2, m_max] whose closed-form bound meets target_tol; the
// whole range is scanned since the closed bound can be unimodal in m.
SelectResult select_m_phi(double target_tol, double tr_a_plus, int d, int p,
                          const GrowthParams& g, int m_max);
SelectResult select_m_psi(double target_tol, int d, int p, const GrowthParams& g, int m_max);

}  // namespace stiefel
