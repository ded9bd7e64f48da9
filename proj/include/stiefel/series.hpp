#pragma once

#include <optional>
#include <vector>

#include "stiefel/linalg.hpp"
#include "stiefel/zonal.hpp"

namespace stiefel {

enum class EvalMode { floating, exact };

struct SeriesParams {
    int d = 1;
    int p = 1;
    int m = 2;          // series covers degrees 0..m-1
    int k_max = 2;      // reference-sum cutoff, >= m
    EvalMode mode = EvalMode::floating;
};

// Truncated series value plus whichever certified bounds have been
// attached (the bounds module fills the optional fields).
struct ApproxReport {
    double value = 0.0;
    std::vector<double> degree_terms;  // per-degree contributions, size m
    std::optional<double> remainder_upper_series;
    std::optional<double> remainder_upper_closed;
    std::optional<double> remainder_lower;
    std::optional<double> t_value;
};

// High-accuracy remainder reference: a certified interval around the
// true tail, with radius equal to the certificate evaluated at the cutoff.
struct RemainderInterval {
    double mid = 0.0;
    double radius = 0.0;
};

// Phi_{d,p} partial sum: sum_{k<m} (1/k!) sum_{|kappa|=k, l(kappa)<=p}
// C_kappa(A) C_kappa(Sigma) / C_kappa(I_d), from the spectra of A and Sigma.
ApproxReport phi_truncated(const SymmetricMatrix& A, const SymmetricMatrix& Sigma,
                           const SeriesParams& params, const ZonalCoeffTable& table);

RemainderInterval phi_remainder_reference(const SymmetricMatrix& A, const SymmetricMatrix& Sigma,
                                          const SeriesParams& params, const ZonalCoeffTable& table);

// Psi_{d,p} partial sum: sum_{k<m} (1/k!) sum_kappa C_kappa(B'B/4) / (d/2)_kappa.
ApproxReport psi_truncated(const RectMatrix& B, const SeriesParams& params,
                           const ZonalCoeffTable& table);

RemainderInterval psi_remainder_reference(const RectMatrix& B, const SeriesParams& params,
                                          const ZonalCoeffTable& table);

// 1F1(p/2; d/2; Sigma) partial sum; equals phi_truncated with A = I_p.
double confluent_1f1_matrix(int p, int d, const SymmetricMatrix& Sigma, int m,
                            const ZonalCoeffTable& table);

// 1F2(1; b, c; x) = sum_k x^k / ((b)_k (c)_k), to relative 1e-15.
double scalar_1f2(double b, double c, double x);

}  // namespace stiefel
