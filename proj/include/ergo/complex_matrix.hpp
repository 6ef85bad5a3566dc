/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace ergo {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major storage, dimensions fixed at construction.
/// Both dimensions must be positive.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t n_rows, std::size_t n_cols);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

    std::size_t rows() const noexcept { return n_rows_; }
    std::size_t cols() const noexcept { return n_cols_; }
    bool square() const noexcept { return n_rows_ == n_cols_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * n_cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return entries_[i * n_cols_ + j];
    }

    Complex* row(std::size_t i) noexcept { return entries_.data() + i * n_cols_; }
    const Complex* row(std::size_t i) const noexcept { return entries_.data() + i * n_cols_; }

    const std::vector<Complex>& entries() const noexcept { return entries_; }

    bool operator==(const ComplexMatrix& other) const = default;

private:
    std::size_t n_rows_;
    std::size_t n_cols_;
    std::vector<Complex> entries_;
};

/// Standard matrix product. Throws std::invalid_argument on a.cols() != b.rows().
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate_transpose(const ComplexMatrix& a);

Complex trace(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

/// max_ij |a_ij|
double max_abs(const ComplexMatrix& a);
/// max_ij |a_ij - b_ij|; dimensions must match
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
/// max-norm of A†A - I, the usual unitarity check
double unitarity_residual(const ComplexMatrix& a);
/// max_ij |a_ij - a_ji| (plain transpose, no conjugation)
double symmetry_residual(const ComplexMatrix& a);

}  // namespace ergo
