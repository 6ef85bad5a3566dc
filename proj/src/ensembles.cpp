/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "ergo/ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ergo {

std::string_view to_string(EnsembleKind kind) {
    switch (kind) {
        case EnsembleKind::CUE: return "CUE";
        case EnsembleKind::COE: return "COE";
        case EnsembleKind::CSE: return "CSE";
    }
    throw std::logic_error("to_string: bad EnsembleKind");
}

EnsembleKind kind_from_string(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    if (upper == "CUE") return EnsembleKind::CUE;
    if (upper == "COE") return EnsembleKind::COE;
    if (upper == "CSE") return EnsembleKind::CSE;
    throw std::invalid_argument("unknown ensemble kind: " + std::string(name));
}

std::size_t matrix_dim(EnsembleKind kind, std::size_t size_n) {
    return kind == EnsembleKind::CSE ? 2 * size_n : size_n;
}

void EnsembleSpec::validate() const {
    if (size_n == 0) throw std::invalid_argument("EnsembleSpec: size_n must be positive");
    if (count_m == 0) throw std::invalid_argument("EnsembleSpec: count_m must be positive");
    if (chunk_size == 0) throw std::invalid_argument("EnsembleSpec: chunk_size must be positive");
}

ChunkPlan plan_chunks(const EnsembleSpec& spec) {
    spec.validate();
    ChunkPlan plan;
    std::size_t begin = 0;
    std::size_t index = 0;
    while (begin < spec.count_m) {
        const std::size_t end = std::min(begin + spec.chunk_size, spec.count_m);
        plan.chunks.push_back({index, begin, end, derive_chunk_seed(spec.master_seed, index)});
        begin = end;
        ++index;
    }
    return plan;
}

ComplexMatrix sample_hermitian(std::size_t n, RandomStream& stream) {
    if (n == 0) throw std::invalid_argument("sample_hermitian: n must be positive");
    ComplexMatrix a(n, n), b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = stream.normal();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = stream.normal();
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double re = 0.5 * (a(i, j).real() + a(j, i).real());
            const double im = 0.5 * (b(i, j).real() - b(j, i).real());
            h(i, j) = Complex(re, im);
        }
    }
    return h;
}

ComplexMatrix sample_cue(std::size_t n, RandomStream& stream) {
    if (n == 0) throw std::invalid_argument("sample_cue: n must be positive");
    const ComplexMatrix h = sample_hermitian(n, stream);
    HermitianEigen eig = hermitian_eigen(h);
    ComplexMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double gamma = stream.uniform_angle();
        const Complex factor(std::cos(gamma), std::sin(gamma));
        const Complex* vi = eig.vectors.row(i);
        Complex* ui = u.row(i);
        for (std::size_t j = 0; j < n; ++j) ui[j] = factor * vi[j];
    }
    return u;
}

ComplexMatrix sample_coe(std::size_t n, RandomStream& stream) {
    const ComplexMatrix u = sample_cue(n, stream);
    return matmul(transpose(u), u);
}

ComplexMatrix make_symplectic_z(std::size_t n) {
    if (n == 0) throw std::invalid_argument("make_symplectic_z: n must be positive");
    ComplexMatrix z(2 * n, 2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        z(2 * k, 2 * k + 1) = 1.0;
        z(2 * k + 1, 2 * k) = -1.0;
    }
    return z;
}

ComplexMatrix sample_cse(std::size_t n, RandomStream& stream) {
    if (n == 0) throw std::invalid_argument("sample_cse: n must be positive");
    const ComplexMatrix u = sample_cue(2 * n, stream);
    const ComplexMatrix z = make_symplectic_z(n);
    return matmul(matmul(matmul(z, transpose(u)), z), u);
}

ComplexMatrix sample_member(EnsembleKind kind, std::size_t size_n, RandomStream& stream) {
    switch (kind) {
        case EnsembleKind::CUE: return sample_cue(size_n, stream);
        case EnsembleKind::COE: return sample_coe(size_n, stream);
        case EnsembleKind::CSE: return sample_cse(size_n, stream);
    }
    throw std::logic_error("sample_member: bad EnsembleKind");
}

namespace {

void check_unit_moduli(const EigenSpectrum& spectrum, double tol) {
    for (const Complex& v : spectrum.values) {
        if (std::abs(std::abs(v) - 1.0) > tol) {
            std::ostringstream msg;
            msg << "generate_ensemble: eigenvalue modulus " << std::abs(v) << " off the unit "
                << "circle beyond tolerance " << tol << " for " << spectrum.source.describe();
            throw std::runtime_error(msg.str());
        }
    }
}

}  // namespace

std::vector<EigenSpectrum> generate_ensemble(const EnsembleSpec& spec, std::size_t workers,
                                             double unit_modulus_tol) {
    spec.validate();
    if (workers == 0) throw std::invalid_argument("generate_ensemble: workers must be positive");
    const ChunkPlan plan = plan_chunks(spec);
    std::vector<EigenSpectrum> out(spec.count_m);

    std::atomic<std::size_t> next_chunk{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run_chunks = [&]() {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t c = next_chunk.fetch_add(1);
            if (c >= plan.chunks.size()) break;
            const ChunkPlan::Chunk& chunk = plan.chunks[c];
            try {
                RandomStream stream(chunk.derived_seed);
                for (std::size_t member = chunk.begin; member < chunk.end; ++member) {
                    const ComplexMatrix m = sample_member(spec.kind, spec.size_n, stream);
                    Provenance prov{std::string(to_string(spec.kind)), member, chunk.index,
                                    chunk.derived_seed};
                    EigenSpectrum spectrum = eigenvalues(m, prov);
                    check_unit_moduli(spectrum, unit_modulus_tol);
                    out[member] = std::move(spectrum);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
            }
        }
    };

    const std::size_t thread_count = std::min(workers, plan.chunks.size());
    if (thread_count <= 1) {
        run_chunks();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(run_chunks);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return out;
}

}  // namespace ergo
