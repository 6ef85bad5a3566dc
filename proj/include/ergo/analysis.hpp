/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ergo/eigen.hpp"
#include "ergo/ensembles.hpp"

namespace ergo {

/// Default epsilon floor for the KL evaluation on fluctuation histograms.
inline constexpr double kDefaultEpsilon = 1e-12;

/// Default bin count for phase histograms.
inline constexpr std::size_t kDefaultBins = 32;

/// Uniform binning of an interval. Phase grids span exactly [-pi, pi); one
/// grid must be shared by every ensemble entering a comparison.
struct BinGrid {
    std::size_t k_bins = 0;
    double lower = 0.0;
    double upper = 0.0;

    BinGrid(std::size_t k_bins, double lower, double upper);

    static BinGrid phase(std::size_t k_bins);
    static BinGrid linear(std::size_t k_bins, double lower, double upper);

    double width() const { return (upper - lower) / static_cast<double>(k_bins); }
    double center(std::size_t k) const { return lower + (static_cast<double>(k) + 0.5) * width(); }
    std::vector<double> edges() const;
    bool is_phase_grid() const;

    bool operator==(const BinGrid&) const = default;
};

/// Normalized histogram of one member's eigenvalue phases: integrates to 1.
struct SpectralDensity {
    BinGrid grid;
    std::vector<double> values;  // density per radian, one per bin
    std::size_t member_index = 0;
};

/// Bin-wise arithmetic mean over the M member densities.
struct MeanDensity {
    BinGrid grid;
    std::vector<double> values;
    std::size_t count_m = 0;
};

/// Per-bin fluctuation of member densities around the ensemble mean,
/// scaled by 1/(M*N).
struct OmegaDistribution {
    BinGrid grid;
    std::vector<double> values;
    std::size_t size_n = 0;   // number of eigenvalues per member (matrix dimension)
    std::size_t count_m = 0;
    EnsembleKind kind = EnsembleKind::CUE;

    bool all_zero() const;
};

/// Ergodicity distances over consecutive ensemble sizes.
struct ErgodicityCascade {
    EnsembleKind kind = EnsembleKind::CUE;
    struct Pair {
        std::size_t size_a = 0;
        std::size_t size_b = 0;
        double d_se = 0.0;
    };
    std::vector<Pair> pairs;
};

/// Histogram of eigenvalue phases, normalized to integrate to 1 over the grid.
/// The grid must be a phase grid; the spectrum must be non-empty.
SpectralDensity phase_density(const EigenSpectrum& spectrum, const BinGrid& grid);

/// Histogram of non-negative real values (moduli) on a linear grid; used for
/// Gram spectra whose phases are all zero. Normalized to integrate to 1.
SpectralDensity modulus_density(const EigenSpectrum& spectrum, const BinGrid& grid);

MeanDensity mean_density(const std::vector<SpectralDensity>& densities);

/// Fluctuation histogram: omega_k = sum_j (rho_j(b_k) - mean(b_k))^2 / (M*N).
/// M = densities.size(); size_n is the eigenvalue count entering the prefactor.
OmegaDistribution omega(const std::vector<SpectralDensity>& densities, std::size_t size_n,
                        EnsembleKind kind);

/// Base-2 KL sum over epsilon-floored fluctuation histograms (no
/// normalization; the inputs are not probability distributions). Throws
/// std::domain_error when both inputs lie entirely below epsilon.
double kl_divergence(const OmegaDistribution& omega_a, const OmegaDistribution& omega_b,
                     double epsilon = kDefaultEpsilon);

/// Symmetrized KL distance: kl(a,b) + kl(b,a). Non-negative; zero iff the
/// floored histograms agree bin-wise.
double ergodicity_distance(const OmegaDistribution& omega_a, const OmegaDistribution& omega_b,
                           double epsilon = kDefaultEpsilon);

/// Supplies the member spectra of one ensemble; lets the cascade run from
/// live generation or from stored datasets.
using SpectraProvider = std::function<std::vector<EigenSpectrum>(const EnsembleSpec&)>;

/// Distance cascade over consecutive sizes. Specs must share kind and M and
/// ascend in size; all omegas are built on the shared grid.
ErgodicityCascade cascade(const std::vector<EnsembleSpec>& specs, const BinGrid& grid,
                          double epsilon, const SpectraProvider& provider);

/// Eigenvalues of W†W: squared singular values, real, clamped to >= 0.
/// Accepts any rectangular matrix.
EigenSpectrum gram_spectrum(const ComplexMatrix& w);

/// Divide all eigenvalues by the maximal modulus; phases are unchanged.
/// Throws std::invalid_argument when the spectrum is all zero.
EigenSpectrum rescale_to_unit_radius(const EigenSpectrum& spectrum);

}  // namespace ergo
