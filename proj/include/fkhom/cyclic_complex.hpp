#pragma once

#include <optional>
#include <vector>

#include "fkhom/algebra.hpp"
#include "fkhom/tensor.hpp"

namespace fkhom {

/// Hochschild cochain of degree m: phi(e_{i0}, ..., e_{im}) stored as a rank m+1 tensor.
class Cochain {
public:
    Cochain() = default;
    Cochain(std::size_t dim, int degree) : values_(dim, static_cast<std::size_t>(degree) + 1), degree_(degree) {}
    explicit Cochain(Tensor values) : values_(std::move(values)), degree_(static_cast<int>(values_.rank()) - 1) {}

    int degree() const { return degree_; }
    std::size_t dim() const { return values_.dim(); }
    const Tensor& values() const { return values_; }
    Tensor& values() { return values_; }
    double max_abs() const { return values_.max_abs(); }

    /// Multilinear evaluation on arbitrary elements (degree+1 of them).
    cplx evaluate(std::span<const Element> args) const;

private:
    Tensor values_;
    int degree_ = 0;
};

/// A chain in Ã ⊗ Ã^{⊗m}; same storage as a cochain.
class Chain {
public:
    Chain() = default;
    Chain(std::size_t dim, int degree) : values_(dim, static_cast<std::size_t>(degree) + 1), degree_(degree) {}
    explicit Chain(Tensor values) : values_(std::move(values)), degree_(static_cast<int>(values_.rank()) - 1) {}

    int degree() const { return degree_; }
    std::size_t dim() const { return values_.dim(); }
    const Tensor& values() const { return values_; }
    Tensor& values() { return values_; }

    /// a0 ⊗ a1 ⊗ ... ⊗ am
    static Chain simple(std::span<const Element> factors);

private:
    Tensor values_;
    int degree_ = 0;
};

/**
 * Element (phi^m, phi^{m-2}, ...) of the totalized (b,B)-complex. Components
 * descend in degree by two and end at degree 0 or 1. A total cochain of top
 * degree -1 has no components (used for the empty witness at m = 1).
 */
class TotalCochain {
public:
    TotalCochain() = default;
    TotalCochain(int top_degree, std::size_t dim);
    TotalCochain(int top_degree, std::vector<Cochain> components);

    int top_degree() const { return top_degree_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Cochain>& components() const { return components_; }
    std::vector<Cochain>& components() { return components_; }
    const Cochain& component(std::size_t i) const { return components_.at(i); }
    double max_abs() const;

private:
    int top_degree_ = -1;
    std::size_t dim_ = 0;
    std::vector<Cochain> components_;
};

/**
 * (b phi)(a0, ..., a_{m+1}) = sum_{i=0}^{m} (-1)^i phi(a0, ..., a_i a_{i+1}, ..., a_{m+1})
 *                           + (-1)^{m+1} phi(a_{m+1} a0, a1, ..., a_m)
 */
Cochain hochschild_b(const Algebra& unital, const Cochain& phi);

/**
 * B = A ∘ B0 with
 *   (B0 phi)(a0, ..., a_{m-1}) = phi(1, a0, ..., a_{m-1}) - (-1)^m phi(a0, ..., a_{m-1}, 1)
 *   (A psi)(a0, ..., a_{m-1})  = sum_j (-1)^{(m-1) j} psi(a_j, ..., a_{j-1}).
 * A degree-0 input maps to the zero cochain of degree 0.
 */
Cochain connes_B(const Algebra& unital, const Cochain& phi);

/// (b+B)(phi^m, phi^{m-2}, ...) = (b phi^m, B phi^m + b phi^{m-2}, ...), top degree m+1.
TotalCochain total_coboundary(const Algebra& unital, const TotalCochain& psi);

/// S(phi^m, phi^{m-2}, ...) = (0, phi^m, phi^{m-2}, ...)
TotalCochain periodicity_S(const TotalCochain& psi);

/// Restriction along C -> Ã: each component evaluated on (1, ..., 1). Result is over C (dim 1).
TotalCochain restrict_to_scalars(const Algebra& unital, const TotalCochain& psi);
bool is_reduced(const Algebra& unital, const TotalCochain& psi, double tol = 0.0);

/// Full contraction sum phi(i0..im) x(i0..im).
cplx pair_cochain_chain(const Cochain& phi, const Chain& x);

/// Entrywise maximum |a - b| together with the flat index where it occurs.
struct TensorDiff {
    double max_residual = 0.0;
    std::vector<std::size_t> worst_tuple;
};
TensorDiff compare(const Tensor& a, const Tensor& b);

}  // namespace fkhom
