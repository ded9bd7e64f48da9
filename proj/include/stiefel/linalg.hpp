#pragma once

#include <vector>

namespace stiefel {

class SymmetricMatrix;

// Dense d x p real matrix, row-major, d >= p >= 1.
class RectMatrix {
public:
    RectMatrix(int rows, int cols, std::vector<double> data);
    static RectMatrix zero(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    const std::vector<double>& data() const { return data_; }

private:
    int rows_, cols_;
    std::vector<double> data_;
};

// Dense real symmetric matrix. Input is symmetrized as (M + M')/2 on
// ingestion; an asymmetry defect beyond 1e-8 (relative to the largest
// entry) is rejected.
class SymmetricMatrix {
public:
    SymmetricMatrix(int n, std::vector<double> data);
    static SymmetricMatrix zero(int n);
    static SymmetricMatrix identity(int n);
    static SymmetricMatrix diagonal(const std::vector<double>& diag);

    int order() const { return n_; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& data() const { return data_; }
    double asymmetry_defect() const { return defect_; }
    double trace() const;

private:
    int n_;
    std::vector<double> data_;
    double defect_ = 0.0;
};

// Eigenvalues sorted descending plus the achieved residual
// max_k |M v_k - lambda_k v_k|_inf.
struct EigenSystem {
    std::vector<double> values;
    double residual = 0.0;
};

// Cyclic Jacobi; converges when the off-diagonal Frobenius mass drops
// below 1e-14 of the initial norm (at most 100 sweeps).
EigenSystem eigen_sym(const SymmetricMatrix& M);

double frobenius_norm(const SymmetricMatrix& M);
double frobenius_norm(const RectMatrix& M);

// diag(|a_1|, ..., |a_n|) from the eigenvalues of M, descending.
SymmetricMatrix abs_eigen_diag(const SymmetricMatrix& M);

// Lambda = B'B / 4, the matrix argument of the Langevin series.
SymmetricMatrix langevin_gram(const RectMatrix& B);

}  // namespace stiefel
