#pragma once

// Small dense linear algebra for chart dimensions <= kMaxDim.

#include <cstddef>
#include <optional>
#include <vector>

namespace foliage::linalg {

/// Row-major square or rectangular matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill)
    {
    }

    static Matrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i * cols_ + j)]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i * cols_ + j)]; }

    Matrix transpose() const;
    friend Matrix operator*(const Matrix& a, const Matrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Gauss-Jordan elimination with partial pivoting. Returns nullopt when a
/// pivot falls below `pivot_tol` times the largest absolute entry.
std::optional<Matrix> inverse(const Matrix& a, double pivot_tol = 1e-14);

/// Lower-triangular L with a = L L^T; nullopt when a is not positive definite.
std::optional<Matrix> cholesky(const Matrix& a);

struct SymmetricEigen {
    std::vector<double> values;  // descending, ties by original diagonal index
    Matrix vectors;              // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi rotations with a fixed (p, q) sweep order.
SymmetricEigen jacobi_eigen(const Matrix& a, int max_sweeps = 64);

double frobenius_norm2(const Matrix& a);

} // namespace foliage::linalg
