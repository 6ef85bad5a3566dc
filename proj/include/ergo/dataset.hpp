/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ergo/analysis.hpp"
#include "ergo/eigen.hpp"
#include "ergo/ensembles.hpp"

namespace ergo {

/// Version of the line-oriented dataset format (see docs/formats.md).
inline constexpr int kDatasetFormatVersion = 1;

/// One ensemble read back from disk.
struct Dataset {
    EnsembleSpec spec;
    std::vector<EigenSpectrum> spectra;
    nlohmann::ordered_json config;  // null when the file carries no config
};

/// Canonical file name, e.g. "cue_n64_m40.jsonl".
std::string dataset_filename(EnsembleKind kind, std::size_t size_n, std::size_t count_m);

/// Write one ensemble as line-oriented JSON: a header record followed by one
/// record per member. `config` (may be null) is embedded in the header.
void write_dataset(const std::filesystem::path& path, const EnsembleSpec& spec,
                   const std::vector<EigenSpectrum>& spectra,
                   const nlohmann::ordered_json& config = nullptr);

/// Read a dataset back; validates record counts, eigenvalue counts and
/// internal consistency. Spectra come back bit-identical to what was written.
Dataset read_dataset(const std::filesystem::path& path);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Omega export: CSV with columns (kind,N,M,K,bin_center,omega_value) and a
/// structured JSON twin. N is the eigenvalue count entering the prefactor.
void write_omega_csv(const std::filesystem::path& path,
                     const std::vector<OmegaDistribution>& omegas,
                     const nlohmann::ordered_json& config = nullptr);
void write_omega_json(const std::filesystem::path& path,
                      const std::vector<OmegaDistribution>& omegas,
                      const nlohmann::ordered_json& config = nullptr);

/// Cascade export: CSV with columns (kind,N_a,N_b,d_se) plus a JSON twin.
void write_cascade_csv(const std::filesystem::path& path,
                       const std::vector<ErgodicityCascade>& cascades,
                       const nlohmann::ordered_json& config = nullptr);
void write_cascade_json(const std::filesystem::path& path,
                        const std::vector<ErgodicityCascade>& cascades,
                        const nlohmann::ordered_json& config = nullptr);

/// Scatter data (re,im) of one spectrum for external plotting.
void write_scatter_csv(const std::filesystem::path& path, const EigenSpectrum& spectrum,
                       const nlohmann::ordered_json& config = nullptr);

/// Density export used by the gram path: (bin_center,density) columns.
void write_density_csv(const std::filesystem::path& path, const SpectralDensity& density,
                       const nlohmann::ordered_json& config = nullptr);
void write_density_json(const std::filesystem::path& path, const SpectralDensity& density,
                        const EigenSpectrum& spectrum,
                        const nlohmann::ordered_json& config = nullptr);

/// Parse a rectangular real matrix from CSV rows. Throws on empty input,
/// ragged rows, or unparseable cells.
ComplexMatrix read_weights_csv(const std::filesystem::path& path);

}  // namespace ergo
