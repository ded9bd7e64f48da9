#include "stiefel/stiefel_mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stiefel/kahan.hpp"

namespace stiefel {

namespace {

uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(uint64_t seed, uint64_t stream)
    : state_(mix64(seed ^ 0x9e3779b97f4a7c15ull) ^ mix64(stream * 0xbf58476d1ce4e5b9ull + 1)) {}

uint64_t CounterRng::next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
}

double CounterRng::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double mult = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * mult;
    have_spare_ = true;
    return u * mult;
}

StiefelPoint sample_stiefel(int d, int p, CounterRng& rng) {
    if (d < p || p < 1) throw std::domain_error("sample_stiefel: need d >= p >= 1");
    RectMatrix x = RectMatrix::zero(d, p);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < p; ++j) x(i, j) = rng.normal();

    // Modified Gram-Schmidt, two passes; the R diagonal is positive by
    // construction, which is the unique factor Haar uniformity needs.
    for (int j = 0; j < p; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int k = 0; k < j; ++k) {
                double dot = 0.0;
                for (int i = 0; i < d; ++i) dot += x(i, k) * x(i, j);
                for (int i = 0; i < d; ++i) x(i, j) -= dot * x(i, k);
            }
        }
        double norm = 0.0;
        for (int i = 0; i < d; ++i) norm += x(i, j) * x(i, j);
        norm = std::sqrt(norm);
        while (norm < 1e-150) {  // essentially impossible; redraw the column
            for (int i = 0; i < d; ++i) x(i, j) = rng.normal();
            for (int k = 0; k < j; ++k) {
                double dot = 0.0;
                for (int i = 0; i < d; ++i) dot += x(i, k) * x(i, j);
                for (int i = 0; i < d; ++i) x(i, j) -= dot * x(i, k);
            }
            norm = 0.0;
            for (int i = 0; i < d; ++i) norm += x(i, j) * x(i, j);
            norm = std::sqrt(norm);
        }
        for (int i = 0; i < d; ++i) x(i, j) /= norm;
    }

    double defect = 0.0;
    for (int a = 0; a < p; ++a) {
        for (int b = 0; b < p; ++b) {
            double dot = 0.0;
            for (int i = 0; i < d; ++i) dot += x(i, a) * x(i, b);
            double want = a == b ? 1.0 : 0.0;
            defect += (dot - want) * (dot - want);
        }
    }
    return {std::move(x), std::sqrt(defect)};
}

namespace {

constexpr long long kBlockSize = 8192;

struct BlockStats {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;
    double max_abs = 0.0;
};

// Chan et al. pairwise combination; deterministic reduction order.
BlockStats combine(const BlockStats& a, const BlockStats& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    BlockStats out;
    out.n = a.n + b.n;
    double delta = b.mean - a.mean;
    out.mean = a.mean + delta * static_cast<double>(b.n) / static_cast<double>(out.n);
    out.m2 = a.m2 + b.m2 +
             delta * delta * static_cast<double>(a.n) * static_cast<double>(b.n) /
                 static_cast<double>(out.n);
    out.max_abs = std::max(a.max_abs, b.max_abs);
    return out;
}

template <typename SampleFn>
McEstimate run_mc(long long n, uint64_t seed, SampleFn&& sample) {
    if (n < 2) throw std::domain_error("mc: need n >= 2");
    const long long n_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<BlockStats> blocks(static_cast<std::size_t>(n_blocks));

    std::atomic<long long> cursor{0};
    auto worker = [&]() {
        for (long long b = cursor.fetch_add(1); b < n_blocks; b = cursor.fetch_add(1)) {
            CounterRng rng(seed, static_cast<uint64_t>(b));
            long long count = std::min(kBlockSize, n - b * kBlockSize);
            BlockStats st;
            KahanSum sum;
            std::vector<double> vals(static_cast<std::size_t>(count));
            for (long long i = 0; i < count; ++i) {
                double v = sample(rng);
                vals[static_cast<std::size_t>(i)] = v;
                sum.add(v);
                st.max_abs = std::max(st.max_abs, std::abs(v));
            }
            st.n = count;
            st.mean = sum.value() / static_cast<double>(count);
            KahanSum sq;
            for (double v : vals) sq.add((v - st.mean) * (v - st.mean));
            st.m2 = sq.value();
            blocks[static_cast<std::size_t>(b)] = st;
        }
    };
    unsigned nthreads =
        std::max(1u, std::min(std::thread::hardware_concurrency(),
                              static_cast<unsigned>(std::min<long long>(n_blocks, 16))));
    if (nthreads > 1) {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        worker();
    }

    // fixed pairwise tree over block index
    std::vector<BlockStats> level = std::move(blocks);
    while (level.size() > 1) {
        std::vector<BlockStats> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(combine(level[i], level[i + 1]));
        if (level.size() % 2) next.push_back(level.back());
        level = std::move(next);
    }
    const BlockStats& total = level[0];

    McEstimate est;
    est.n = total.n;
    est.seed = seed;
    est.mean = total.mean;
    est.stderr_of_mean =
        std::sqrt(total.m2 / static_cast<double>(total.n - 1) / static_cast<double>(total.n));
    est.heavy_tail_warning = total.max_abs > 1e6 * std::abs(total.mean);
    return est;
}

}  // namespace

McEstimate mc_phi(const SymmetricMatrix& A, const SymmetricMatrix& Sigma, long long n,
                  uint64_t seed) {
    const int p = A.order(), d = Sigma.order();
    if (d < p) throw std::domain_error("mc_phi: need d >= p");
    return run_mc(n, seed, [&](CounterRng& rng) {
        StiefelPoint pt = sample_stiefel(d, p, rng);
        // tr A x' Sigma x
        double tr = 0.0;
        for (int a = 0; a < p; ++a) {
            for (int b = 0; b < p; ++b) {
                double g = 0.0;  // (x' Sigma x)_{ab}
                for (int i = 0; i < d; ++i) {
                    double sxi = 0.0;
                    for (int j = 0; j < d; ++j) sxi += Sigma(i, j) * pt.x(j, b);
                    g += pt.x(i, a) * sxi;
                }
                tr += A(b, a) * g;
            }
        }
        return std::exp(tr);
    });
}

McEstimate mc_psi(const RectMatrix& B, long long n, uint64_t seed) {
    const int d = B.rows(), p = B.cols();
    return run_mc(n, seed, [&](CounterRng& rng) {
        StiefelPoint pt = sample_stiefel(d, p, rng);
        double tr = 0.0;  // tr B'x
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < p; ++j) tr += B(i, j) * pt.x(i, j);
        return std::exp(tr);
    });
}

McEstimate mc_zonal_integral(const Partition& kappa, const SymmetricMatrix& Sigma, long long n,
                             uint64_t seed) {
    const int d = Sigma.order();
    const int ell = kappa.length();
    if (ell > d) throw std::domain_error("mc_zonal_integral: need l(kappa) <= d");
    return run_mc(n, seed, [&](CounterRng& rng) {
        StiefelPoint h = sample_stiefel(d, d, rng);
        // W = H' Sigma H
        std::vector<double> w(static_cast<std::size_t>(d) * d, 0.0);
        for (int a = 0; a < d; ++a) {
            for (int b = 0; b < d; ++b) {
                double s = 0.0;
                for (int i = 0; i < d; ++i) {
                    double si = 0.0;
                    for (int j = 0; j < d; ++j) si += Sigma(i, j) * h.x(j, b);
                    s += h.x(i, a) * si;
                }
                w[static_cast<std::size_t>(a) * d + b] = s;
            }
        }
        // leading principal minors det_j(W), j = 1..ell, by Gaussian elimination
        double out = 1.0;
        for (int j = 1; j <= ell; ++j) {
            int expo = kappa.part(j - 1) - kappa.part(j);
            if (expo == 0) continue;
            std::vector<double> sub(static_cast<std::size_t>(j) * j);
            for (int a = 0; a < j; ++a)
                for (int b = 0; b < j; ++b)
                    sub[static_cast<std::size_t>(a) * j + b] = w[static_cast<std::size_t>(a) * d + b];
            double det = 1.0;
            for (int col = 0; col < j; ++col) {
                int piv = col;
                for (int row = col + 1; row < j; ++row)
                    if (std::abs(sub[static_cast<std::size_t>(row) * j + col]) >
                        std::abs(sub[static_cast<std::size_t>(piv) * j + col]))
                        piv = row;
                if (piv != col) {
                    for (int b = 0; b < j; ++b)
                        std::swap(sub[static_cast<std::size_t>(piv) * j + b],
                                  sub[static_cast<std::size_t>(col) * j + b]);
                    det = -det;
                }
                double diag = sub[static_cast<std::size_t>(col) * j + col];
                det *= diag;
                if (det == 0.0) break;
                for (int row = col + 1; row < j; ++row) {
                    double f = sub[static_cast<std::size_t>(row) * j + col] / diag;
                    for (int b = col; b < j; ++b)
                        sub[static_cast<std::size_t>(row) * j + b] -=
                            f * sub[static_cast<std::size_t>(col) * j + b];
                }
            }
            out *= std::pow(det, expo);
        }
        return out;
    });
}

double zonal_integral_target(const Partition& kappa, const SymmetricMatrix& Sigma,
                             const ZonalCoeffTable& table) {
    auto eigs = eigen_sym(Sigma).values;
    return eval_zonal(kappa, eigs, table) / zonal_unit_value(kappa, Sigma.order()).to_double();
}

}  // namespace stiefel
