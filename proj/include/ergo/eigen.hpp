/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ergo/complex_matrix.hpp"

namespace ergo {

/// Allowed deviation of |lambda| from 1 for spectra of circular-ensemble members.
inline constexpr double kUnitModulusTolerance = 1e-8;

/// QR sweep budget: max_sweeps = kSweepFactor * n before giving up.
inline constexpr std::size_t kSweepFactor = 30;

/// Origin of a spectrum; carried through dataset records and error messages.
struct Provenance {
    std::string kind;  // "CUE", "COE", "CSE", or empty for ad-hoc input
    std::uint64_t member_index = 0;
    std::uint64_t chunk_index = 0;
    std::uint64_t seed = 0;

    std::string describe() const;
};

/// All eigenvalues of one matrix, sorted by phase in [-pi, pi), ties by modulus.
struct EigenSpectrum {
    std::size_t size_n = 0;  // matrix dimension; equals values.size()
    std::vector<Complex> values;
    Provenance source;
};

class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Principal phase of z in [-pi, pi); +pi is mapped to -pi.
double principal_phase(const Complex& z);

/// Deterministic spectrum ordering: phase ascending, ties by modulus, then re, then im.
void sort_spectrum(std::vector<Complex>& values);

/// Eigenvalues of a general dense complex matrix via Householder reduction to
/// Hessenberg form followed by shifted QR iteration. Eigenvalues only.
///
/// Throws std::invalid_argument for non-square or non-finite input and
/// ConvergenceError (naming `source`) if the sweep budget is exhausted.
EigenSpectrum eigenvalues(const ComplexMatrix& a, const Provenance& source = {},
                          std::size_t sweep_factor = kSweepFactor);

/// Eigendecomposition of a complex Hermitian matrix: unitary reduction to real
/// tridiagonal form, then implicit-shift QL with accumulated rotations. The
/// returned eigenvector columns are orthonormal; eigenvalues ascend.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
};

HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Eigenvalues only, ascending. Same reduction as hermitian_eigen without
/// accumulating the transform.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

}  // namespace ergo
