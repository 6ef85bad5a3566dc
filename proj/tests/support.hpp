/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

// Test-only oracles, deliberately independent of the library's solver paths:
// naive products, LU determinants, characteristic-polynomial root finding,
// one-sided Jacobi singular values, and direct formula evaluations.

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ergo/analysis.hpp"
#include "ergo/complex_matrix.hpp"
#include "ergo/random_stream.hpp"

namespace ergo::testing {

inline ComplexMatrix random_complex_matrix(std::size_t rows, std::size_t cols,
                                           RandomStream& stream) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = Complex(stream.normal(), stream.normal());
    return m;
}

inline ComplexMatrix random_real_matrix(std::size_t rows, std::size_t cols, RandomStream& stream) {
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = stream.normal();
    return m;
}

// Plain triple loop, the i-j-k schoolbook order.
inline ComplexMatrix naive_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("naive_matmul: shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex sum(0.0);
            for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * b(k, j);
            c(i, j) = sum;
        }
    }
    return c;
}

// Determinant by LU with partial pivoting.
inline Complex lu_determinant(ComplexMatrix a) {
    const std::size_t n = a.rows();
    Complex det(1.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
            det = -det;
        }
        const Complex akk = a(k, k);
        if (akk == 0.0) return 0.0;
        det *= akk;
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex f = a(i, k) / akk;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

// Characteristic polynomial coefficients by the Faddeev-LeVerrier recurrence:
// p(z) = z^n + c[1] z^(n-1) + ... + c[n]. Exact arithmetic chain, no
// eigenvalue machinery involved.
inline std::vector<Complex> char_poly(const ComplexMatrix& a) {
    const std::size_t n = a.rows();
    std::vector<Complex> c(n + 1);
    c[0] = 1.0;
    ComplexMatrix m = a;
    for (std::size_t k = 1; k <= n; ++k) {
        c[k] = -trace(m) / static_cast<double>(k);
        if (k == n) break;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += c[k];
        m = naive_matmul(a, m);
    }
    return c;
}

// All roots of a polynomial with complex coefficients (leading coefficient
// first) by Durand-Kerner iteration.
inline std::vector<Complex> poly_roots(const std::vector<Complex>& coeffs) {
    const std::size_t degree = coeffs.size() - 1;
    if (degree == 0) return {};
    std::vector<Complex> monic(coeffs.begin() + 1, coeffs.end());
    for (Complex& c : monic) c /= coeffs[0];
    auto eval = [&](Complex z) {
        Complex p(1.0);
        for (const Complex& c : monic) p = p * z + c;
        return p;
    };
    std::vector<Complex> roots(degree);
    const Complex start(0.4, 0.9);
    Complex power(1.0);
    for (std::size_t i = 0; i < degree; ++i) {
        power *= start;
        roots[i] = power;
    }
    for (int iter = 0; iter < 500; ++iter) {
        double moved = 0.0;
        for (std::size_t i = 0; i < degree; ++i) {
            Complex denom(1.0);
            for (std::size_t j = 0; j < degree; ++j)
                if (j != i) denom *= roots[i] - roots[j];
            const Complex delta = eval(roots[i]) / denom;
            roots[i] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-14) break;
    }
    return roots;
}

// Greedy multiset match: worst pairing distance after matching each left
// value to its nearest unused right value. Exact for well-separated sets.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    std::vector<bool> used(b.size(), false);
    for (const Complex& x : a) {
        std::size_t best = b.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(x - b[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

// Singular values by one-sided Jacobi: rotate column pairs until mutually
// orthogonal; singular values are the final column norms. Descending.
inline std::vector<double> jacobi_singular_values(const ComplexMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::vector<Complex>> col(n, std::vector<Complex>(m));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) col[j][i] = a(i, j);
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex apq(0.0);
                double app = 0.0, aqq = 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    apq += std::conj(col[p][i]) * col[q][i];
                    app += std::norm(col[p][i]);
                    aqq += std::norm(col[q][i]);
                }
                const double scale = std::sqrt(app * aqq);
                if (scale == 0.0 || std::abs(apq) <= 1e-15 * scale) continue;
                off = std::max(off, std::abs(apq) / scale);
                // complex Jacobi rotation diagonalizing the 2x2 Gram block
                const double tau = (aqq - app) / (2.0 * std::abs(apq));
                const double t = std::copysign(1.0, tau) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const Complex s = t * c * (apq / std::abs(apq));
                for (std::size_t i = 0; i < m; ++i) {
                    const Complex vp = col[p][i];
                    const Complex vq = col[q][i];
                    col[p][i] = c * vp - std::conj(s) * vq;
                    col[q][i] = s * vp + c * vq;
                }
            }
        }
        if (off < 1e-15) break;
    }
    std::vector<double> sv(n);
    for (std::size_t j = 0; j < n; ++j) {
        double nrm = 0.0;
        for (std::size_t i = 0; i < m; ++i) nrm += std::norm(col[j][i]);
        sv[j] = std::sqrt(nrm);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

// Direct double-loop evaluation of the fluctuation histogram.
inline std::vector<double> omega_bruteforce(const std::vector<SpectralDensity>& densities,
                                            std::size_t size_n) {
    const std::size_t k_bins = densities.front().grid.k_bins;
    const std::size_t m = densities.size();
    std::vector<double> out(k_bins, 0.0);
    for (std::size_t k = 0; k < k_bins; ++k) {
        double mean = 0.0;
        for (std::size_t j = 0; j < m; ++j) mean += densities[j].values[k];
        mean /= static_cast<double>(m);
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double diff = densities[j].values[k] - mean;
            sum += diff * diff;
        }
        out[k] = sum / (static_cast<double>(m) * static_cast<double>(size_n));
    }
    return out;
}

// Term-by-term base-2 KL sum over floored values.
inline double kl_bruteforce(const std::vector<double>& a, const std::vector<double>& b,
                            double epsilon) {
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double x = std::max(a[k], epsilon);
        const double y = std::max(b[k], epsilon);
        sum += x * (std::log(x / y) / std::log(2.0));
    }
    return sum;
}

// Pearson chi-square statistic against a flat expectation.
inline double chi_square_uniform(const std::vector<std::size_t>& counts) {
    double total = 0.0;
    for (std::size_t c : counts) total += static_cast<double>(c);
    const double expected = total / static_cast<double>(counts.size());
    double stat = 0.0;
    for (std::size_t c : counts) {
        const double diff = static_cast<double>(c) - expected;
        stat += diff * diff / expected;
    }
    return stat;
}

inline double circular_distance(double a, double b) {
    double d = std::abs(a - b);
    return std::min(d, 2.0 * std::numbers::pi - d);
}

// Worst intra-pair phase distance of a greedy nearest-phase pairing: sort the
// phases, pair adjacent entries with either parity (handling the wrap), and
// keep the better orientation. Infinity when the count is odd.
inline double kramers_pairing_distance(const std::vector<Complex>& values) {
    const std::size_t n = values.size();
    if (n % 2 != 0) return std::numeric_limits<double>::infinity();
    std::vector<double> phases;
    phases.reserve(n);
    for (const Complex& v : values) phases.push_back(principal_phase(v));
    std::sort(phases.begin(), phases.end());
    double even = 0.0, odd = 0.0;
    for (std::size_t i = 0; i + 1 < n; i += 2) {
        even = std::max(even, circular_distance(phases[i], phases[i + 1]));
    }
    for (std::size_t i = 1; i + 1 < n; i += 2) {
        odd = std::max(odd, circular_distance(phases[i], phases[i + 1]));
    }
    odd = std::max(odd, circular_distance(phases[n - 1], phases[0]));
    return std::min(even, odd);
}

}  // namespace ergo::testing
