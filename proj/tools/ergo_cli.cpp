/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ergo/pipeline.hpp"

namespace {

using ergo::RunConfig;

struct SweepFlags {
    std::vector<std::string> kinds;
    std::vector<std::size_t> sizes;
    std::size_t ensemble_size = 0;
    std::size_t bins = 0;
    double epsilon = 0.0;
    std::uint64_t seed = 0;
    std::size_t chunk_size = 0;
    std::size_t workers = 0;
    std::string out;
    std::string config_file;
};

// Shared sweep options; every flag defaults to "absent" so that explicit
// flags can override a config file.
void add_sweep_options(CLI::App* cmd, SweepFlags& flags) {
    cmd->add_option("--kinds", flags.kinds, "Ensemble kinds (CUE, COE, CSE)")->delimiter(',');
    cmd->add_option("--sizes", flags.sizes, "Matrix sizes, strictly ascending")->delimiter(',');
    cmd->add_option("--ensemble-size", flags.ensemble_size, "Members per ensemble (M)");
    cmd->add_option("--bins", flags.bins, "Histogram bin count (K)");
    cmd->add_option("--epsilon", flags.epsilon, "Epsilon floor for the KL evaluation");
    cmd->add_option("--seed", flags.seed, "Master seed");
    cmd->add_option("--chunk-size", flags.chunk_size, "Members per seeded chunk");
    cmd->add_option("--workers", flags.workers, "Worker threads for generation");
    cmd->add_option("--out", flags.out, "Output directory");
    cmd->add_option("--config", flags.config_file, "JSON config file (flags win)");
}

RunConfig resolve_config(const CLI::App* cmd, const SweepFlags& flags) {
    RunConfig config;
    if (!flags.config_file.empty()) {
        std::ifstream in(flags.config_file);
        if (!in) throw std::runtime_error("cannot open config file: " + flags.config_file);
        config = ergo::config_from_json(nlohmann::ordered_json::parse(in), config);
    }
    if (cmd->count("--kinds") > 0) {
        config.kinds.clear();
        for (const std::string& name : flags.kinds) {
            config.kinds.push_back(ergo::kind_from_string(name));
        }
    }
    if (cmd->count("--sizes") > 0) config.sizes = flags.sizes;
    if (cmd->count("--ensemble-size") > 0) config.count_m = flags.ensemble_size;
    if (cmd->count("--bins") > 0) config.k_bins = flags.bins;
    if (cmd->count("--epsilon") > 0) config.epsilon = flags.epsilon;
    if (cmd->count("--seed") > 0) config.master_seed = flags.seed;
    if (cmd->count("--chunk-size") > 0) config.chunk_size = flags.chunk_size;
    if (cmd->count("--out") > 0) config.output_dir = flags.out;
    if (cmd->count("--workers") > 0) {
        config.workers = flags.workers;
    } else if (const char* env = std::getenv("ERGO_WORKERS")) {
        config.workers = static_cast<std::size_t>(std::strtoull(env, nullptr, 10));
        if (config.workers == 0) throw std::runtime_error("ERGO_WORKERS must be positive");
    }
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Circular random-matrix ensembles and spectral-ergodicity analysis"};
    app.require_subcommand(1);

    SweepFlags gen_flags;
    CLI::App* gen = app.add_subcommand("generate", "Sample ensembles and store their spectra");
    add_sweep_options(gen, gen_flags);

    SweepFlags ana_flags;
    std::string data_dir;
    CLI::App* ana = app.add_subcommand("analyze", "Build omega and cascade exports from datasets");
    add_sweep_options(ana, ana_flags);
    ana->add_option("--data", data_dir, "Dataset directory (defaults to --out)");

    std::string plot_dataset;
    std::size_t plot_member = 0;
    std::string plot_out = "eigenplot.csv";
    CLI::App* plot = app.add_subcommand("eigenplot", "Dump one member's eigenvalues as (re,im)");
    plot->add_option("dataset", plot_dataset, "Dataset file (.jsonl)")->required();
    plot->add_option("--member", plot_member, "Member index (default 0)");
    plot->add_option("--out", plot_out, "Output CSV file");

    std::string gram_weights;
    ergo::GramOptions gram_options;
    std::string gram_out = "gram_density.csv";
    CLI::App* gram = app.add_subcommand("gram", "Spectrum of W†W for a rectangular weights CSV");
    gram->add_option("weights", gram_weights, "Weights CSV file (rows of reals)")->required();
    gram->add_option("--bins", gram_options.bins, "Histogram bin count");
    gram->add_flag("--rescale", gram_options.rescale, "Rescale so the maximal eigenvalue is 1");
    gram->add_option("--out", gram_out, "Output CSV file (JSON twin written alongside)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const RunConfig config = resolve_config(gen, gen_flags);
            std::cout << "generate: " << config.kinds.size() << " kind(s) x "
                      << config.sizes.size() << " size(s), M=" << config.count_m << ", seed="
                      << config.master_seed << ", workers=" << config.workers << "\n";
            const ergo::GenerateReport report = ergo::run_generate(config);
            for (const auto& f : report.files) std::cout << "wrote " << f.string() << "\n";
        } else if (ana->parsed()) {
            const RunConfig config = resolve_config(ana, ana_flags);
            const std::filesystem::path datasets =
                data_dir.empty() ? config.output_dir : std::filesystem::path(data_dir);
            const ergo::AnalyzeReport report = ergo::run_analyze(config, datasets);
            for (const auto& f : report.omega_csv) std::cout << "wrote " << f.string() << "\n";
            std::cout << "wrote " << report.cascade_csv.string() << "\n";
            std::cout << "wrote " << report.cascade_json.string() << "\n";
            for (const auto& c : report.cascades) {
                std::cout << ergo::to_string(c.kind) << " cascade:";
                for (const auto& p : c.pairs) {
                    std::cout << " d_se(" << p.size_a << "," << p.size_b
                              << ")=" << ergo::format_double(p.d_se);
                }
                std::cout << "\n";
            }
        } else if (plot->parsed()) {
            const auto out = ergo::run_eigenplot(plot_dataset, plot_member, plot_out);
            std::cout << "wrote " << out.string() << "\n";
        } else if (gram->parsed()) {
            gram_options.out_csv = gram_out;
            const ergo::GramReport report = ergo::run_gram(gram_weights, gram_options);
            std::cout << "wrote " << report.csv.string() << "\n";
            std::cout << "wrote " << report.json.string() << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
