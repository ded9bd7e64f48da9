#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stiefel/linalg.hpp"
#include "stiefel/zonal.hpp"

namespace stiefel {

// One executed inequality check: lhs <= rhs with one-sided slack.
struct CheckResult {
    std::string name;
    bool passed = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    std::string witness;
};

// prod_i (p a_i)! <= alpha_p^{2p} p^{p sum a} (sum a)!^p, exact left side.
CheckResult check_factorial_lemma(const std::vector<int>& a, int p);

// (2p)^{-|k|} d^{|k|} <= (d/2)_kappa <= 2^{-|k|} (d+|k|)^{|k|}, exact rationals.
std::pair<CheckResult, CheckResult> check_pochhammer_bounds(const Partition& kappa, int d, int p);

// prod_i (sqrt(d)/2)_{p kappa_i} / (d/2)_{p kappa_i}
//   <= [alpha_p (|k|!)^{1/2} gamma1^{|k|} p^{|k|/2} d^{-|k|/2}]^p,
// plus the scalar single-r version for each r = p kappa_i.
CheckResult check_ratio_bound(const Partition& kappa, int d, int p);

// |C_kappa(Sigma)| <= C_kappa(Sigma_+)
CheckResult check_abs_bound(const Partition& kappa, const SymmetricMatrix& Sigma,
                            const ZonalCoeffTable& table);

// |C_kappa(Sigma)| <= (prod ratio)^{1/p} C_kappa(I_d) ||Sigma||^{|kappa|}
CheckResult check_zonal_upper(const Partition& kappa, const SymmetricMatrix& Sigma, int p,
                              const ZonalCoeffTable& table);

struct FkComparison {
    CheckResult fk;        // C_kappa(Sigma) <= C_kappa(I_d) prod sigma_(j)^{kappa_j}
    double bound_ratio;    // rhs of the Frobenius-norm bound over rhs of the FK bound
};
FkComparison check_fk_bound_and_compare(const Partition& kappa, const SymmetricMatrix& Sigma,
                                        int p, const ZonalCoeffTable& table);

// C_kappa(Sigma) >= (1+|kappa|)^{-N_d} C_kappa(I_d) sigma_(1)^{k1} ... sigma_(p)^{kp}
CheckResult check_zonal_lower(const Partition& kappa, const SymmetricMatrix& Sigma,
                              const ZonalCoeffTable& table);

// 1 <= (prod ratio)^{1/p} d^{|kappa|/2}; tends to 1 along dyadic d.
CheckResult check_scalar_tightness(const Partition& kappa, int d);

// Spiked spectrum far from every scalar matrix: sigma d^{r/2} on the
// first p eigenvalues, rho d^{-(d-p+1)/2} on the rest.
SymmetricMatrix spiked_sigma(int d, int p, double sigma, double rho, double r);

struct VerifySuiteConfig {
    int max_weight = 6;
    std::vector<int> dims = {2, 3, 4, 6, 8, 10, 12};
    uint64_t seed = 42;
    int instances = 200;  // per randomized family
};

// Runs every check family over its documented sweep; one aggregated
// result per family carrying the worst-margin witness.
std::vector<CheckResult> run_verify_suite(const VerifySuiteConfig& cfg,
                                          const ZonalCoeffTable& table);

}  // namespace stiefel
