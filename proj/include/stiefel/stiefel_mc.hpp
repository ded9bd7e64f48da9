#pragma once

#include <cstdint>

#include "stiefel/linalg.hpp"
#include "stiefel/zonal.hpp"

namespace stiefel {

// Counter-based generator: a splitmix64 walk keyed by (seed, stream).
// Streams are independent and reproducible regardless of thread count.
class CounterRng {
public:
    CounterRng(uint64_t seed, uint64_t stream);

    uint64_t next_u64();
    double uniform01();       // [0, 1)
    double normal();          // polar method, one cached variate

private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

struct StiefelPoint {
    RectMatrix x;
    double orthonormality_defect;  // ||x'x - I_p||_F
};

// Haar-uniform draw on V_{d,p}: Gaussian fill, then the unique QR factor
// with positive triangular diagonal.
StiefelPoint sample_stiefel(int d, int p, CounterRng& rng);

struct McEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    long long n = 0;
    uint64_t seed = 0;
    bool heavy_tail_warning = false;  // max summand exceeded 1e6 x mean
};

// Monte Carlo means over the uniform measure, deterministic for a given
// (seed, n) through fixed block streams and a fixed reduction tree.
McEstimate mc_phi(const SymmetricMatrix& A, const SymmetricMatrix& Sigma, long long n,
                  uint64_t seed);
McEstimate mc_psi(const RectMatrix& B, long long n, uint64_t seed);

// Estimates James's orthogonal-group integral for C_kappa(Sigma)/C_kappa(I_d):
// mean of prod_j det_j(H' Sigma H)^{kappa_j - kappa_{j+1}} over Haar H.
McEstimate mc_zonal_integral(const Partition& kappa, const SymmetricMatrix& Sigma, long long n,
                             uint64_t seed);

// The exact target of mc_zonal_integral.
double zonal_integral_target(const Partition& kappa, const SymmetricMatrix& Sigma,
                             const ZonalCoeffTable& table);

}  // namespace stiefel
