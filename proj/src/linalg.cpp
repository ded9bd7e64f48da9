#include "stiefel/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "stiefel/errors.hpp"

namespace stiefel {

RectMatrix::RectMatrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows < 1 || cols < 1 || rows < cols)
        throw input_error("RectMatrix: need rows >= cols >= 1");
    if (data_.size() != static_cast<std::size_t>(rows) * cols)
        throw input_error("RectMatrix: data length does not match rows*cols");
    for (double v : data_)
        if (!std::isfinite(v)) throw input_error("RectMatrix: non-finite entry");
}

RectMatrix RectMatrix::zero(int rows, int cols) {
    return RectMatrix(rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols, 0.0));
}

SymmetricMatrix::SymmetricMatrix(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {
    if (n < 1) throw input_error("SymmetricMatrix: order must be >= 1");
    if (data_.size() != static_cast<std::size_t>(n) * n)
        throw input_error("SymmetricMatrix: data length does not match n*n");
    double max_abs = 0.0;
    for (double v : data_) {
        if (!std::isfinite(v)) throw input_error("SymmetricMatrix: non-finite entry");
        max_abs = std::max(max_abs, std::abs(v));
    }
    for (int i = 0; i < n_; ++i) {
        for (int j = i + 1; j < n_; ++j) {
            double a = (*this)(i, j), b = (*this)(j, i);
            defect_ = std::max(defect_, std::abs(a - b));
            double s = 0.5 * (a + b);
            data_[static_cast<std::size_t>(i) * n_ + j] = s;
            data_[static_cast<std::size_t>(j) * n_ + i] = s;
        }
    }
    if (defect_ > 1e-8 * std::max(1.0, max_abs))
        throw input_error("SymmetricMatrix: asymmetry defect exceeds 1e-8");
}

SymmetricMatrix SymmetricMatrix::zero(int n) {
    return SymmetricMatrix(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0));
}

SymmetricMatrix SymmetricMatrix::identity(int n) {
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 1.0;
    return SymmetricMatrix(n, std::move(d));
}

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& diag) {
    int n = static_cast<int>(diag.size());
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = diag[i];
    return SymmetricMatrix(n, std::move(d));
}

double SymmetricMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

namespace {

double off_diag_mass(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) s += a[static_cast<std::size_t>(i) * n + j] * a[static_cast<std::size_t>(i) * n + j];
    return std::sqrt(s);
}

}  // namespace

EigenSystem eigen_sym(const SymmetricMatrix& M) {
    const int n = M.order();
    std::vector<double> a = M.data();
    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
    auto at = [&](std::vector<double>& m, int i, int j) -> double& {
        return m[static_cast<std::size_t>(i) * n + j];
    };

    const double norm0 = frobenius_norm(M);
    const double target = 1e-14 * norm0;
    for (int sweep = 0; sweep < 100 && n > 1; ++sweep) {
        if (off_diag_mass(a, n) <= target) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = at(a, p, q);
                if (apq == 0.0) continue;
                double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(a, k, p), akq = at(a, k, q);
                    at(a, k, p) = c * akp - s * akq;
                    at(a, k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(a, p, k), aqk = at(a, q, k);
                    at(a, p, k) = c * apk - s * aqk;
                    at(a, q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = at(v, k, p), vkq = at(v, k, q);
                    at(v, k, p) = c * vkp - s * vkq;
                    at(v, k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return a[static_cast<std::size_t>(i) * n + i] > a[static_cast<std::size_t>(j) * n + j];
    });

    EigenSystem sys;
    sys.values.resize(n);
    for (int i = 0; i < n; ++i) sys.values[i] = a[static_cast<std::size_t>(order[i]) * n + order[i]];

    // residual max |M v_k - lambda_k v_k|
    double res = 0.0;
    for (int k = 0; k < n; ++k) {
        int col = order[k];
        for (int i = 0; i < n; ++i) {
            double mv = 0.0;
            for (int j = 0; j < n; ++j) mv += M(i, j) * v[static_cast<std::size_t>(j) * n + col];
            res = std::max(res, std::abs(mv - sys.values[k] * v[static_cast<std::size_t>(i) * n + col]));
        }
    }
    sys.residual = res;
    return sys;
}

double frobenius_norm(const SymmetricMatrix& M) {
    double s = 0.0;
    for (double v : M.data()) s += v * v;
    return std::sqrt(s);
}

double frobenius_norm(const RectMatrix& M) {
    double s = 0.0;
    for (double v : M.data()) s += v * v;
    return std::sqrt(s);
}

SymmetricMatrix abs_eigen_diag(const SymmetricMatrix& M) {
    EigenSystem sys = eigen_sym(M);
    std::vector<double> d(sys.values.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::abs(sys.values[i]);
    std::sort(d.begin(), d.end(), std::greater<double>());
    return SymmetricMatrix::diagonal(d);
}

SymmetricMatrix langevin_gram(const RectMatrix& B) {
    const int d = B.rows(), p = B.cols();
    std::vector<double> g(static_cast<std::size_t>(p) * p, 0.0);
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            double s = 0.0;
            for (int k = 0; k < d; ++k) s += B(k, i) * B(k, j);
            g[static_cast<std::size_t>(i) * p + j] = 0.25 * s;
            g[static_cast<std::size_t>(j) * p + i] = 0.25 * s;
        }
    }
    return SymmetricMatrix(p, std::move(g));
}

}  // namespace stiefel
