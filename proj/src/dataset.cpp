/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "ergo/dataset.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ergo {

namespace {

using nlohmann::ordered_json;

std::ofstream open_for_write(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    return in;
}

void write_config_comment(std::ofstream& out, const ordered_json& config) {
    if (!config.is_null()) out << "# config: " << config.dump() << "\n";
}

std::string lower(std::string_view s) {
    std::string r(s);
    for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return r;
}

}  // namespace

std::string dataset_filename(EnsembleKind kind, std::size_t size_n, std::size_t count_m) {
    std::ostringstream os;
    os << lower(to_string(kind)) << "_n" << size_n << "_m" << count_m << ".jsonl";
    return os.str();
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

void write_dataset(const std::filesystem::path& path, const EnsembleSpec& spec,
                   const std::vector<EigenSpectrum>& spectra, const ordered_json& config) {
    spec.validate();
    if (spectra.size() != spec.count_m) {
        throw std::invalid_argument("write_dataset: spectra count does not match spec.count_m");
    }
    std::ofstream out = open_for_write(path);
    ordered_json header{{"record", "header"},
                        {"format_version", kDatasetFormatVersion},
                        {"kind", to_string(spec.kind)},
                        {"size_n", spec.size_n},
                        {"count_m", spec.count_m},
                        {"master_seed", spec.master_seed},
                        {"chunk_size", spec.chunk_size}};
    if (!config.is_null()) header["config"] = config;
    out << header.dump() << "\n";
    for (const EigenSpectrum& s : spectra) {
        ordered_json eig = ordered_json::array();
        for (const Complex& v : s.values) eig.push_back({v.real(), v.imag()});
        ordered_json record{{"record", "member"},
                            {"member_index", s.source.member_index},
                            {"chunk_index", s.source.chunk_index},
                            {"eigenvalues", std::move(eig)}};
        out << record.dump() << "\n";
    }
    if (!out) throw std::runtime_error("write_dataset: write failed for " + path.string());
}

Dataset read_dataset(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("read_dataset: empty file " + path.string());
    }
    const ordered_json header = ordered_json::parse(line);
    if (header.value("record", "") != "header") {
        throw std::runtime_error("read_dataset: first record is not a header in " + path.string());
    }
    const int version = header.at("format_version").get<int>();
    if (version != kDatasetFormatVersion) {
        throw std::runtime_error("read_dataset: unsupported format_version " +
                                 std::to_string(version) + " in " + path.string());
    }
    Dataset ds;
    ds.spec.kind = kind_from_string(header.at("kind").get<std::string>());
    ds.spec.size_n = header.at("size_n").get<std::size_t>();
    ds.spec.count_m = header.at("count_m").get<std::size_t>();
    ds.spec.master_seed = header.at("master_seed").get<std::uint64_t>();
    ds.spec.chunk_size = header.at("chunk_size").get<std::size_t>();
    ds.spec.validate();
    ds.config = header.contains("config") ? header.at("config") : ordered_json(nullptr);

    const std::size_t dim = matrix_dim(ds.spec.kind, ds.spec.size_n);
    ds.spectra.reserve(ds.spec.count_m);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const ordered_json rec = ordered_json::parse(line);
        if (rec.value("record", "") != "member") {
            throw std::runtime_error("read_dataset: unexpected record in " + path.string());
        }
        EigenSpectrum s;
        s.source.kind = std::string(to_string(ds.spec.kind));
        s.source.member_index = rec.at("member_index").get<std::uint64_t>();
        s.source.chunk_index = rec.at("chunk_index").get<std::uint64_t>();
        s.source.seed = derive_chunk_seed(ds.spec.master_seed, s.source.chunk_index);
        const auto& eig = rec.at("eigenvalues");
        if (eig.size() != dim) {
            throw std::runtime_error("read_dataset: eigenvalue count mismatch in " +
                                     path.string());
        }
        s.size_n = dim;
        s.values.reserve(dim);
        for (const auto& pair : eig) {
            s.values.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        }
        if (s.source.member_index != ds.spectra.size()) {
            throw std::runtime_error("read_dataset: member records out of order in " +
                                     path.string());
        }
        ds.spectra.push_back(std::move(s));
    }
    if (ds.spectra.size() != ds.spec.count_m) {
        throw std::runtime_error("read_dataset: expected " + std::to_string(ds.spec.count_m) +
                                 " members, found " + std::to_string(ds.spectra.size()) + " in " +
                                 path.string());
    }
    return ds;
}

void write_omega_csv(const std::filesystem::path& path,
                     const std::vector<OmegaDistribution>& omegas, const ordered_json& config) {
    std::ofstream out = open_for_write(path);
    write_config_comment(out, config);
    out << "kind,N,M,K,bin_center,omega_value\n";
    for (const OmegaDistribution& om : omegas) {
        for (std::size_t k = 0; k < om.grid.k_bins; ++k) {
            out << to_string(om.kind) << ',' << om.size_n << ',' << om.count_m << ','
                << om.grid.k_bins << ',' << format_double(om.grid.center(k)) << ','
                << format_double(om.values[k]) << "\n";
        }
    }
}

void write_omega_json(const std::filesystem::path& path,
                      const std::vector<OmegaDistribution>& omegas, const ordered_json& config) {
    ordered_json doc;
    doc["config"] = config;
    ordered_json list = ordered_json::array();
    for (const OmegaDistribution& om : omegas) {
        ordered_json centers = ordered_json::array();
        for (std::size_t k = 0; k < om.grid.k_bins; ++k) centers.push_back(om.grid.center(k));
        list.push_back({{"kind", to_string(om.kind)},
                        {"N", om.size_n},
                        {"M", om.count_m},
                        {"K", om.grid.k_bins},
                        {"bin_centers", std::move(centers)},
                        {"values", om.values}});
    }
    doc["omegas"] = std::move(list);
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << "\n";
}

void write_cascade_csv(const std::filesystem::path& path,
                       const std::vector<ErgodicityCascade>& cascades,
                       const ordered_json& config) {
    std::ofstream out = open_for_write(path);
    write_config_comment(out, config);
    out << "kind,N_a,N_b,d_se\n";
    for (const ErgodicityCascade& c : cascades) {
        for (const ErgodicityCascade::Pair& p : c.pairs) {
            out << to_string(c.kind) << ',' << p.size_a << ',' << p.size_b << ','
                << format_double(p.d_se) << "\n";
        }
    }
}

void write_cascade_json(const std::filesystem::path& path,
                        const std::vector<ErgodicityCascade>& cascades,
                        const ordered_json& config) {
    ordered_json doc;
    doc["config"] = config;
    ordered_json list = ordered_json::array();
    for (const ErgodicityCascade& c : cascades) {
        ordered_json pairs = ordered_json::array();
        for (const ErgodicityCascade::Pair& p : c.pairs) {
            pairs.push_back({{"N_a", p.size_a}, {"N_b", p.size_b}, {"d_se", p.d_se}});
        }
        list.push_back({{"kind", to_string(c.kind)}, {"pairs", std::move(pairs)}});
    }
    doc["cascades"] = std::move(list);
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << "\n";
}

void write_scatter_csv(const std::filesystem::path& path, const EigenSpectrum& spectrum,
                       const ordered_json& config) {
    std::ofstream out = open_for_write(path);
    write_config_comment(out, config);
    out << "re,im\n";
    for (const Complex& v : spectrum.values) {
        out << format_double(v.real()) << ',' << format_double(v.imag()) << "\n";
    }
}

void write_density_csv(const std::filesystem::path& path, const SpectralDensity& density,
                       const ordered_json& config) {
    std::ofstream out = open_for_write(path);
    write_config_comment(out, config);
    out << "bin_center,density\n";
    for (std::size_t k = 0; k < density.grid.k_bins; ++k) {
        out << format_double(density.grid.center(k)) << ',' << format_double(density.values[k])
            << "\n";
    }
}

void write_density_json(const std::filesystem::path& path, const SpectralDensity& density,
                        const EigenSpectrum& spectrum, const ordered_json& config) {
    ordered_json doc;
    doc["config"] = config;
    ordered_json eig = ordered_json::array();
    for (const Complex& v : spectrum.values) eig.push_back(v.real());
    doc["eigenvalues"] = std::move(eig);
    ordered_json centers = ordered_json::array();
    for (std::size_t k = 0; k < density.grid.k_bins; ++k) centers.push_back(density.grid.center(k));
    doc["bin_centers"] = std::move(centers);
    doc["density"] = density.values;
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << "\n";
}

ComplexMatrix read_weights_csv(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            if (comma == std::string::npos) comma = line.size();
            std::string_view cell(line.data() + pos, comma - pos);
            while (!cell.empty() && (cell.front() == ' ' || cell.front() == '\t'))
                cell.remove_prefix(1);
            while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\t'))
                cell.remove_suffix(1);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (ec != std::errc() || ptr != cell.data() + cell.size()) {
                throw std::runtime_error("read_weights_csv: bad cell '" + std::string(cell) +
                                         "' at " + path.string() + ":" + std::to_string(line_no));
            }
            row.push_back(v);
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw std::runtime_error("read_weights_csv: ragged row at " + path.string() + ":" +
                                     std::to_string(line_no));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw std::runtime_error("read_weights_csv: no data in " + path.string());
    }
    ComplexMatrix w(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) w(i, j) = rows[i][j];
    if (!all_finite(w)) {
        throw std::runtime_error("read_weights_csv: non-finite entries in " + path.string());
    }
    return w;
}

}  // namespace ergo
