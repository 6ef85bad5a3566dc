/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "ergo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ergo {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> bin_counts(const std::vector<double>& positions, const BinGrid& grid) {
    std::vector<double> counts(grid.k_bins, 0.0);
    const double width = grid.width();
    for (double x : positions) {
        if (x < grid.lower || x > grid.upper) {
            throw std::invalid_argument("density: value outside the bin grid");
        }
        auto k = static_cast<std::size_t>((x - grid.lower) / width);
        if (k >= grid.k_bins) k = grid.k_bins - 1;  // x == upper edge
        counts[k] += 1.0;
    }
    return counts;
}

SpectralDensity normalized_density(std::vector<double> counts, const BinGrid& grid,
                                   std::size_t total, std::size_t member_index) {
    const double scale = 1.0 / (static_cast<double>(total) * grid.width());
    for (double& c : counts) c *= scale;
    return {grid, std::move(counts), member_index};
}

void require_same_grid(const BinGrid& a, const BinGrid& b, const char* who) {
    if (!(a == b)) throw std::invalid_argument(std::string(who) + ": bin grids differ");
}

}  // namespace

BinGrid::BinGrid(std::size_t k_bins_, double lower_, double upper_)
    : k_bins(k_bins_), lower(lower_), upper(upper_) {
    if (k_bins == 0) throw std::invalid_argument("BinGrid: need at least one bin");
    if (!(lower < upper)) throw std::invalid_argument("BinGrid: lower must be below upper");
}

BinGrid BinGrid::phase(std::size_t k_bins) { return BinGrid(k_bins, -kPi, kPi); }

BinGrid BinGrid::linear(std::size_t k_bins, double lower, double upper) {
    return BinGrid(k_bins, lower, upper);
}

std::vector<double> BinGrid::edges() const {
    std::vector<double> e(k_bins + 1);
    for (std::size_t k = 0; k < k_bins; ++k) e[k] = lower + static_cast<double>(k) * width();
    e[k_bins] = upper;
    return e;
}

bool BinGrid::is_phase_grid() const { return lower == -kPi && upper == kPi; }

bool OmegaDistribution::all_zero() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

SpectralDensity phase_density(const EigenSpectrum& spectrum, const BinGrid& grid) {
    if (spectrum.values.empty()) {
        throw std::invalid_argument("phase_density: empty spectrum");
    }
    if (!grid.is_phase_grid()) {
        throw std::invalid_argument("phase_density: grid must span [-pi, pi)");
    }
    std::vector<double> phases;
    phases.reserve(spectrum.values.size());
    for (const Complex& v : spectrum.values) phases.push_back(principal_phase(v));
    return normalized_density(bin_counts(phases, grid), grid, phases.size(),
                              spectrum.source.member_index);
}

SpectralDensity modulus_density(const EigenSpectrum& spectrum, const BinGrid& grid) {
    if (spectrum.values.empty()) {
        throw std::invalid_argument("modulus_density: empty spectrum");
    }
    std::vector<double> moduli;
    moduli.reserve(spectrum.values.size());
    for (const Complex& v : spectrum.values) moduli.push_back(std::abs(v));
    return normalized_density(bin_counts(moduli, grid), grid, moduli.size(),
                              spectrum.source.member_index);
}

MeanDensity mean_density(const std::vector<SpectralDensity>& densities) {
    if (densities.empty()) throw std::invalid_argument("mean_density: no densities");
    const BinGrid& grid = densities.front().grid;
    for (const SpectralDensity& d : densities) require_same_grid(d.grid, grid, "mean_density");
    // mean as anchor plus averaged differences: identical members reproduce
    // their common value exactly, so downstream fluctuations cancel to zero
    const std::vector<double>& anchor = densities.front().values;
    std::vector<double> mean(grid.k_bins, 0.0);
    const double inv_m = 1.0 / static_cast<double>(densities.size());
    for (std::size_t k = 0; k < grid.k_bins; ++k) {
        double shifted = 0.0;
        for (const SpectralDensity& d : densities) shifted += d.values[k] - anchor[k];
        mean[k] = anchor[k] + shifted * inv_m;
    }
    return {grid, std::move(mean), densities.size()};
}

OmegaDistribution omega(const std::vector<SpectralDensity>& densities, std::size_t size_n,
                        EnsembleKind kind) {
    if (densities.empty()) throw std::invalid_argument("omega: no densities");
    if (size_n == 0) throw std::invalid_argument("omega: size_n must be positive");
    const MeanDensity mean = mean_density(densities);
    const BinGrid& grid = mean.grid;
    const double prefactor =
        1.0 / (static_cast<double>(densities.size()) * static_cast<double>(size_n));
    std::vector<double> values(grid.k_bins, 0.0);
    for (std::size_t k = 0; k < grid.k_bins; ++k) {
        double sum = 0.0;
        for (const SpectralDensity& d : densities) {
            const double diff = d.values[k] - mean.values[k];
            sum += diff * diff;
        }
        values[k] = prefactor * sum;
    }
    return {grid, std::move(values), size_n, densities.size(), kind};
}

double kl_divergence(const OmegaDistribution& omega_a, const OmegaDistribution& omega_b,
                     double epsilon) {
    require_same_grid(omega_a.grid, omega_b.grid, "kl_divergence");
    if (epsilon <= 0.0) throw std::invalid_argument("kl_divergence: epsilon must be positive");
    const auto below = [epsilon](double v) { return v < epsilon; };
    if (std::all_of(omega_a.values.begin(), omega_a.values.end(), below) &&
        std::all_of(omega_b.values.begin(), omega_b.values.end(), below)) {
        throw std::domain_error("kl_divergence: both inputs lie below epsilon; distance undefined");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < omega_a.grid.k_bins; ++k) {
        const double a = std::max(omega_a.values[k], epsilon);
        const double b = std::max(omega_b.values[k], epsilon);
        sum += a * std::log2(a / b);
    }
    return sum;
}

double ergodicity_distance(const OmegaDistribution& omega_a, const OmegaDistribution& omega_b,
                           double epsilon) {
    return kl_divergence(omega_a, omega_b, epsilon) + kl_divergence(omega_b, omega_a, epsilon);
}

ErgodicityCascade cascade(const std::vector<EnsembleSpec>& specs, const BinGrid& grid,
                          double epsilon, const SpectraProvider& provider) {
    if (specs.size() < 2) throw std::invalid_argument("cascade: need at least two sizes");
    for (std::size_t i = 1; i < specs.size(); ++i) {
        if (specs[i].kind != specs.front().kind || specs[i].count_m != specs.front().count_m) {
            throw std::invalid_argument("cascade: specs must share kind and ensemble size");
        }
        if (specs[i].size_n <= specs[i - 1].size_n) {
            throw std::invalid_argument("cascade: sizes must ascend");
        }
    }
    std::vector<OmegaDistribution> omegas;
    omegas.reserve(specs.size());
    for (const EnsembleSpec& spec : specs) {
        const std::vector<EigenSpectrum> spectra = provider(spec);
        if (spectra.empty()) throw std::invalid_argument("cascade: provider returned no spectra");
        std::vector<SpectralDensity> densities;
        densities.reserve(spectra.size());
        for (const EigenSpectrum& s : spectra) densities.push_back(phase_density(s, grid));
        omegas.push_back(omega(densities, spectra.front().values.size(), spec.kind));
    }
    ErgodicityCascade out;
    out.kind = specs.front().kind;
    for (std::size_t i = 0; i + 1 < specs.size(); ++i) {
        out.pairs.push_back({specs[i].size_n, specs[i + 1].size_n,
                             ergodicity_distance(omegas[i], omegas[i + 1], epsilon)});
    }
    return out;
}

EigenSpectrum gram_spectrum(const ComplexMatrix& w) {
    if (!all_finite(w)) throw std::invalid_argument("gram_spectrum: entries must be finite");
    const ComplexMatrix gram = matmul(conjugate_transpose(w), w);
    std::vector<double> values = hermitian_eigenvalues(gram);
    std::vector<Complex> spectrum;
    spectrum.reserve(values.size());
    for (double v : values) spectrum.emplace_back(std::max(v, 0.0), 0.0);
    sort_spectrum(spectrum);
    return {w.cols(), std::move(spectrum), {}};
}

EigenSpectrum rescale_to_unit_radius(const EigenSpectrum& spectrum) {
    double max_modulus = 0.0;
    for (const Complex& v : spectrum.values) max_modulus = std::max(max_modulus, std::abs(v));
    if (max_modulus == 0.0) {
        throw std::invalid_argument("rescale_to_unit_radius: spectrum is all zero");
    }
    EigenSpectrum out = spectrum;
    for (Complex& v : out.values) v /= max_modulus;
    return out;
}

}  // namespace ergo
