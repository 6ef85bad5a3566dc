/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "ergo/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ergo {

ComplexMatrix::ComplexMatrix(std::size_t n_rows, std::size_t n_cols)
    : n_rows_(n_rows), n_cols_(n_cols), entries_(n_rows * n_cols) {
    if (n_rows == 0 || n_cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    if (r == 0) throw std::invalid_argument("ComplexMatrix: empty row list");
    const std::size_t c = rows.begin()->size();
    ComplexMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ComplexMatrix: ragged row list");
        std::size_t j = 0;
        for (const Complex& z : row) m(i, j++) = z;
        ++i;
    }
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matmul: inner dimensions do not match");
    }
    const std::size_t n = a.rows(), k_dim = a.cols(), m = b.cols();
    ComplexMatrix c(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        Complex* ci = c.row(i);
        const Complex* ai = a.row(i);
        for (std::size_t k = 0; k < k_dim; ++k) {
            const Complex aik = ai[k];
            if (aik == 0.0) continue;
            const Complex* bk = b.row(k);
            for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
        }
    }
    return c;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

ComplexMatrix conjugate_transpose(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

Complex trace(const ComplexMatrix& a) {
    Complex t = 0.0;
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i < n; ++i) t += a(i, i);
    return t;
}

bool all_finite(const ComplexMatrix& a) {
    for (const Complex& z : a.entries()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: dimensions do not match");
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

double unitarity_residual(const ComplexMatrix& a) {
    return max_abs_diff(matmul(conjugate_transpose(a), a), ComplexMatrix::identity(a.cols()));
}

double symmetry_residual(const ComplexMatrix& a) {
    if (!a.square()) throw std::invalid_argument("symmetry_residual: matrix must be square");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - a(j, i)));
    return m;
}

}  // namespace ergo
