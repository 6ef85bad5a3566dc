/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <filesystem>
#include <vector>

#include <json.hpp>

#include "ergo/analysis.hpp"
#include "ergo/dataset.hpp"

namespace ergo {

/// One sweep configuration: which ensembles to generate and how to bin and
/// compare them. workers and output_dir steer execution only and are not part
/// of the dataset identity.
struct RunConfig {
    std::vector<EnsembleKind> kinds{EnsembleKind::CUE, EnsembleKind::COE, EnsembleKind::CSE};
    std::vector<std::size_t> sizes{32, 64, 128};
    std::size_t count_m = 20;
    std::size_t k_bins = kDefaultBins;
    double epsilon = kDefaultEpsilon;
    std::uint64_t master_seed = 42;
    std::size_t chunk_size = 8;
    std::size_t workers = 1;
    std::filesystem::path output_dir = "out";

    void validate() const;
};

/// The reproducibility-relevant fields as JSON; embedded into every output
/// file header and reparsed by config_from_json.
nlohmann::ordered_json config_identity_json(const RunConfig& config);

/// Apply recognized keys of a JSON object (config file or embedded identity)
/// onto `base`. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::ordered_json& j, RunConfig base = {});

struct GenerateReport {
    std::vector<std::filesystem::path> files;
};

/// Generate every (kind, size) ensemble of the sweep and persist one dataset
/// file per cell under config.output_dir. Byte-identical for any worker count.
GenerateReport run_generate(const RunConfig& config);

struct AnalyzeReport {
    std::vector<std::filesystem::path> omega_csv;
    std::vector<std::filesystem::path> omega_json;
    std::filesystem::path cascade_csv;
    std::filesystem::path cascade_json;
    std::vector<ErgodicityCascade> cascades;
};

/// Load the sweep's datasets from dataset_dir, build per-kind omega exports
/// and the cascade export under config.output_dir.
AnalyzeReport run_analyze(const RunConfig& config, const std::filesystem::path& dataset_dir);

/// Emit the (re, im) scatter data of one stored member for external plotting.
std::filesystem::path run_eigenplot(const std::filesystem::path& dataset_file,
                                    std::size_t member_index,
                                    const std::filesystem::path& out_file);

struct GramOptions {
    std::size_t bins = kDefaultBins;
    bool rescale = false;
    std::filesystem::path out_csv = "gram_density.csv";
};

struct GramReport {
    std::filesystem::path csv;
    std::filesystem::path json;
    EigenSpectrum spectrum;
};

/// Gram spectrum of a rectangular weights CSV: eigenvalues of W†W, optional
/// rescale to unit radius, magnitude histogram on a linear grid.
GramReport run_gram(const std::filesystem::path& weights_file, const GramOptions& options);

}  // namespace ergo
