#pragma once

#include <cstdint>
#include <random>

#include "fkhom/fredholm.hpp"

namespace fkhom::models {

/**
 * Discrete Hardy module, m = 2: pointwise functions on N grid points acting
 * by multiplication on C^N, F = 2P+ - 1 with P+ the projection onto Fourier
 * modes 0, ..., N/2 - 1.
 */
FredholmModule discrete_hardy(std::size_t N);

/// Grid samples of z^w, z = exp(2πi x/N), as an element of Ã (unit coefficient 0).
Element winding_symbol(std::size_t N, int w);
/// Grid samples of an arbitrary function, as an element of Ã.
Element grid_function(const std::vector<cplx>& values);

/// P+ u P+ on modes [0, N/2) for grid values u.
Matrix compressed_symbol(const std::vector<cplx>& values);

struct IndexOracle {
    int index = 0;            ///< kernel minus cokernel, counting low-mode vectors only
    int kernel_low = 0;
    int cokernel_low = 0;
    int kernel_edge = 0;      ///< finite-section artifacts at the truncation edge
    int cokernel_edge = 0;
    double smallest_kept = 0.0;  ///< smallest singular value above the threshold
};

/**
 * Index of the compressed symbol from its near-null singular vectors. A vector
 * counts toward the index when most of its mass sits in modes [0, N/4); the
 * rest are truncation artifacts at the high edge.
 */
IndexOracle hardy_index_oracle(const std::vector<cplx>& values, double threshold = 1e-6);

/// Graded module over C^3 on C^{2n}: γ = diag(1_n, -1_n), F = offdiag(V, V*), m odd.
FredholmModule toy_even_module(std::size_t n, std::uint64_t seed, int m = 3);

/// Ungraded module (m even) with F = 2P - 1 and rep = W (L ⊗ 1 ⊕ 0) W*, L the left regular representation.
FredholmModule random_reflection_module(std::size_t n, const Algebra& algebra, std::uint64_t seed, int m = 2);

/// Haar-distributed unitary.
Matrix random_unitary(std::size_t n, std::mt19937_64& rng);
/// Hermitian matrix with standard Gaussian entries.
Matrix random_hermitian(std::size_t n, std::mt19937_64& rng);

/// T = u F u* - F with u = exp(iεK); K commutes with γ in the graded case.
Matrix conjugation_perturbation(const FredholmModule& f, std::uint64_t seed, double eps);

}  // namespace fkhom::models
