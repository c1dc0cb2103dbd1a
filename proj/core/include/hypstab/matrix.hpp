#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "hypstab/errors.hpp"

namespace hypstab {

// Dense row-major matrix. Dimensions may be zero so block algebra on
// boundary slices works when one characteristic family is empty.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols);
    Matrix(int rows, int cols, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<double>& entries() const { return data_; }

    Matrix transposed() const;
    Matrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const Matrix& b);
    double max_abs() const;

    std::vector<double> matvec(const std::vector<double>& x) const;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator*(double s, const Matrix& a);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> values; // strictly decreasing
    Matrix vectors;             // column j pairs with values[j]
};

Matrix invert(const Matrix& m);
double determinant(const Matrix& m);

// Distinct real nonzero spectrum only; anything else throws.
EigenDecomposition eig_real(const Matrix& m);

double operator_norm_2(const Matrix& m);

struct SymmetricEigen {
    std::vector<double> values; // ascending
    Matrix vectors;
};
SymmetricEigen eig_symmetric(const Matrix& m);
double min_symmetric_eigenvalue(const Matrix& m);

struct CMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::complex<double>> data;

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c) {}

    std::complex<double>& operator()(int i, int j) {
        return data[static_cast<size_t>(i) * cols + j];
    }
    std::complex<double> operator()(int i, int j) const {
        return data[static_cast<size_t>(i) * cols + j];
    }
};

CMatrix to_complex(const Matrix& m);

// Row i scaled by exp(i*theta[i]); theta must have one angle per row.
CMatrix scale_rows_by_phases(const Matrix& m, const std::vector<double>& theta);

double spectral_radius(const CMatrix& m);

namespace detail {

struct PowerIteration {
    std::complex<double> rayleigh{0.0, 0.0};
    bool converged = false;
    bool decayed = false; // iterate collapsed toward the kernel
    std::vector<std::complex<double>> vector;
};

// Plain power iteration with a Rayleigh-quotient eigenvalue estimate;
// convergence means the estimate is stable to rel_tol over three steps.
PowerIteration power_iterate(const CMatrix& m, std::vector<std::complex<double>> start,
                             int max_iters, double rel_tol);

} // namespace detail

} // namespace hypstab
