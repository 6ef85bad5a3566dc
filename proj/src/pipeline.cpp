/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "ergo/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>

namespace ergo {

namespace {

using nlohmann::ordered_json;

std::vector<std::string> kind_names(const std::vector<EnsembleKind>& kinds) {
    std::vector<std::string> names;
    names.reserve(kinds.size());
    for (EnsembleKind k : kinds) names.emplace_back(to_string(k));
    return names;
}

}  // namespace

void RunConfig::validate() const {
    if (kinds.empty()) throw std::invalid_argument("RunConfig: kinds must not be empty");
    if (sizes.empty()) throw std::invalid_argument("RunConfig: sizes must not be empty");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == 0) throw std::invalid_argument("RunConfig: sizes must be positive");
        if (i > 0 && sizes[i] <= sizes[i - 1]) {
            throw std::invalid_argument("RunConfig: sizes must be strictly ascending");
        }
    }
    if (count_m == 0) throw std::invalid_argument("RunConfig: ensemble size must be positive");
    if (k_bins == 0) throw std::invalid_argument("RunConfig: bins must be positive");
    if (epsilon <= 0.0) throw std::invalid_argument("RunConfig: epsilon must be positive");
    if (chunk_size == 0) throw std::invalid_argument("RunConfig: chunk size must be positive");
    if (workers == 0) throw std::invalid_argument("RunConfig: workers must be positive");
}

ordered_json config_identity_json(const RunConfig& config) {
    return ordered_json{{"kinds", kind_names(config.kinds)}, {"sizes", config.sizes},
                        {"ensemble_size", config.count_m},  {"bins", config.k_bins},
                        {"epsilon", config.epsilon},        {"seed", config.master_seed},
                        {"chunk_size", config.chunk_size}};
}

RunConfig config_from_json(const ordered_json& j, RunConfig base) {
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    for (const auto& [key, value] : j.items()) {
        if (key == "kinds") {
            base.kinds.clear();
            for (const auto& name : value) base.kinds.push_back(kind_from_string(name.get<std::string>()));
        } else if (key == "sizes") {
            base.sizes = value.get<std::vector<std::size_t>>();
        } else if (key == "ensemble_size") {
            base.count_m = value.get<std::size_t>();
        } else if (key == "bins") {
            base.k_bins = value.get<std::size_t>();
        } else if (key == "epsilon") {
            base.epsilon = value.get<double>();
        } else if (key == "seed") {
            base.master_seed = value.get<std::uint64_t>();
        } else if (key == "chunk_size") {
            base.chunk_size = value.get<std::size_t>();
        } else if (key == "workers") {
            base.workers = value.get<std::size_t>();
        } else if (key == "out") {
            base.output_dir = value.get<std::string>();
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    return base;
}

GenerateReport run_generate(const RunConfig& config) {
    config.validate();
    const ordered_json identity = config_identity_json(config);
    GenerateReport report;
    for (EnsembleKind kind : config.kinds) {
        for (std::size_t n : config.sizes) {
            const EnsembleSpec spec{kind, n, config.count_m, config.master_seed,
                                    config.chunk_size};
            const std::vector<EigenSpectrum> spectra = generate_ensemble(spec, config.workers);
            const std::filesystem::path file =
                config.output_dir / dataset_filename(kind, n, config.count_m);
            write_dataset(file, spec, spectra, identity);
            report.files.push_back(file);
        }
    }
    return report;
}

AnalyzeReport run_analyze(const RunConfig& config, const std::filesystem::path& dataset_dir) {
    config.validate();
    if (config.sizes.size() < 2) {
        throw std::invalid_argument("run_analyze: need at least two sizes for a cascade");
    }
    const ordered_json identity = config_identity_json(config);
    const BinGrid grid = BinGrid::phase(config.k_bins);

    AnalyzeReport report;
    std::vector<ErgodicityCascade> cascades;
    for (EnsembleKind kind : config.kinds) {
        // load the whole size column once; the cascade provider reuses it
        std::map<std::size_t, std::vector<EigenSpectrum>> column;
        for (std::size_t n : config.sizes) {
            const std::filesystem::path file =
                dataset_dir / dataset_filename(kind, n, config.count_m);
            if (!std::filesystem::exists(file)) {
                throw std::runtime_error("run_analyze: missing dataset " + file.string());
            }
            Dataset ds = read_dataset(file);
            if (ds.spec.kind != kind || ds.spec.count_m != config.count_m) {
                throw std::runtime_error("run_analyze: dataset " + file.string() +
                                         " does not match the requested configuration");
            }
            column.emplace(n, std::move(ds.spectra));
        }

        std::vector<OmegaDistribution> omegas;
        std::vector<EnsembleSpec> specs;
        for (std::size_t n : config.sizes) {
            const std::vector<EigenSpectrum>& spectra = column.at(n);
            std::vector<SpectralDensity> densities;
            densities.reserve(spectra.size());
            for (const EigenSpectrum& s : spectra) densities.push_back(phase_density(s, grid));
            omegas.push_back(omega(densities, spectra.front().values.size(), kind));
            specs.push_back({kind, n, config.count_m, config.master_seed, config.chunk_size});
        }
        const SpectraProvider provider = [&column](const EnsembleSpec& s) {
            return column.at(s.size_n);
        };
        cascades.push_back(cascade(specs, grid, config.epsilon, provider));

        std::string stem = "omega_" + std::string(to_string(kind));
        for (char& c : stem) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        std::filesystem::path csv = config.output_dir / (stem + ".csv");
        std::filesystem::path json = config.output_dir / (stem + ".json");
        write_omega_csv(csv, omegas, identity);
        write_omega_json(json, omegas, identity);
        report.omega_csv.push_back(std::move(csv));
        report.omega_json.push_back(std::move(json));
    }

    report.cascade_csv = config.output_dir / "cascade.csv";
    report.cascade_json = config.output_dir / "cascade.json";
    write_cascade_csv(report.cascade_csv, cascades, identity);
    write_cascade_json(report.cascade_json, cascades, identity);
    report.cascades = std::move(cascades);
    return report;
}

std::filesystem::path run_eigenplot(const std::filesystem::path& dataset_file,
                                    std::size_t member_index,
                                    const std::filesystem::path& out_file) {
    const Dataset ds = read_dataset(dataset_file);
    if (member_index >= ds.spectra.size()) {
        throw std::out_of_range("run_eigenplot: member index " + std::to_string(member_index) +
                                " out of range (dataset has " +
                                std::to_string(ds.spectra.size()) + " members)");
    }
    write_scatter_csv(out_file, ds.spectra[member_index], ds.config);
    return out_file;
}

GramReport run_gram(const std::filesystem::path& weights_file, const GramOptions& options) {
    if (options.bins == 0) throw std::invalid_argument("run_gram: bins must be positive");
    const ComplexMatrix w = read_weights_csv(weights_file);
    EigenSpectrum spectrum = gram_spectrum(w);
    if (options.rescale) spectrum = rescale_to_unit_radius(spectrum);

    double max_modulus = 0.0;
    for (const Complex& v : spectrum.values) max_modulus = std::max(max_modulus, std::abs(v));
    const BinGrid grid =
        BinGrid::linear(options.bins, 0.0, max_modulus > 0.0 ? max_modulus : 1.0);
    const SpectralDensity density = modulus_density(spectrum, grid);

    const ordered_json params{{"input", weights_file.string()},
                              {"rows", w.rows()},
                              {"cols", w.cols()},
                              {"bins", options.bins},
                              {"rescale", options.rescale}};
    GramReport report;
    report.csv = options.out_csv;
    report.json = options.out_csv;
    report.json.replace_extension(".json");
    write_density_csv(report.csv, density, params);
    write_density_json(report.json, density, spectrum, params);
    report.spectrum = std::move(spectrum);
    return report;
}

}  // namespace ergo
