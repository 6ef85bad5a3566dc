/*
 * Copyright 2026 the ergo authors
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ergo/complex_matrix.hpp"
#include "ergo/eigen.hpp"
#include "ergo/random_stream.hpp"

namespace ergo {

enum class EnsembleKind { CUE, COE, CSE };

std::string_view to_string(EnsembleKind kind);
EnsembleKind kind_from_string(std::string_view name);  // case-insensitive

/// Matrix dimension of one member: size_n for CUE/COE, 2*size_n for CSE.
std::size_t matrix_dim(EnsembleKind kind, std::size_t size_n);

/// Everything needed to regenerate one ensemble bit-for-bit.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::CUE;
    std::size_t size_n = 0;        // logical size N (CSE members are 2N x 2N)
    std::size_t count_m = 0;       // ensemble size M
    std::uint64_t master_seed = 0;
    std::size_t chunk_size = 8;

    void validate() const;
};

/// Deterministic partition of member indices into seeded chunks.
struct ChunkPlan {
    struct Chunk {
        std::size_t index = 0;
        std::size_t begin = 0;  // half-open member range [begin, end)
        std::size_t end = 0;
        std::uint64_t derived_seed = 0;
    };
    std::vector<Chunk> chunks;
};

ChunkPlan plan_chunks(const EnsembleSpec& spec);

/// Hermitian matrix H_ij = (a_ij + i b_ij + a_ji - i b_ji)/2 with a, b drawn
/// as i.i.d. standard normals. H == H† holds bit-exactly by construction.
ComplexMatrix sample_hermitian(std::size_t n, RandomStream& stream);

/// CUE member: U = diag(exp(i gamma_k)) * V with V the orthonormal eigenvector
/// matrix of a fresh Hermitian sample and gamma_k uniform in [0, 2*pi).
ComplexMatrix sample_cue(std::size_t n, RandomStream& stream);

/// COE member: O = U^T U for a fresh CUE sample.
ComplexMatrix sample_coe(std::size_t n, RandomStream& stream);

/// Block-diagonal 2n x 2n matrix with [[0,1],[-1,0]] blocks on the diagonal.
/// Satisfies Z^T = -Z, Z^T Z = I and Z^2 = -I.
ComplexMatrix make_symplectic_z(std::size_t n);

/// CSE member: S = (Z U^T Z) U with U a fresh CUE sample of dimension 2n.
ComplexMatrix sample_cse(std::size_t n, RandomStream& stream);

/// Dispatch on kind; the matrix is matrix_dim(kind, size_n) square.
ComplexMatrix sample_member(EnsembleKind kind, std::size_t size_n, RandomStream& stream);

/// Generate all M member spectra. Chunks run in parallel across `workers`
/// threads; each chunk owns its derived stream, so the output is bit-identical
/// for every worker count. Members are ordered by index.
///
/// Spectra are validated against `unit_modulus_tol`; violations and solver
/// failures raise errors naming (kind, N, member, chunk seed) for replay.
std::vector<EigenSpectrum> generate_ensemble(const EnsembleSpec& spec, std::size_t workers = 1,
                                             double unit_modulus_tol = kUnitModulusTolerance);

}  // namespace ergo
