#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fkhom/core.hpp"

namespace fkhom {

/// Coefficient vector of an algebra element in the basis of its owning algebra.
class Element {
public:
    Element() = default;
    explicit Element(Vector coeffs) : coeffs_(std::move(coeffs)) {}
    static Element zero(std::size_t dim) { return Element(Vector::Zero(static_cast<Eigen::Index>(dim))); }
    static Element basis(std::size_t dim, std::size_t i);

    std::size_t size() const { return static_cast<std::size_t>(coeffs_.size()); }
    const Vector& coeffs() const { return coeffs_; }
    cplx operator[](std::size_t i) const { return coeffs_(static_cast<Eigen::Index>(i)); }

    Element operator+(const Element& o) const { return Element(coeffs_ + o.coeffs_); }
    Element operator-(const Element& o) const { return Element(coeffs_ - o.coeffs_); }
    Element operator*(cplx s) const { return Element(coeffs_ * s); }

private:
    Vector coeffs_;
};

/**
 * Finite-dimensional associative complex algebra given by structure constants
 *
 *   e_i e_j = sum_k c(i, j, k) e_k
 *
 * with an optional unit vector and an optional non-negative degree per basis
 * element. Immutable after construction.
 */
class Algebra {
public:
    Algebra(std::size_t dim, std::vector<std::string> labels, std::vector<cplx> structure,
            std::optional<Vector> unit = std::nullopt, std::optional<std::vector<int>> grading = std::nullopt);

    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& labels() const { return labels_; }
    cplx structure(std::size_t i, std::size_t j, std::size_t k) const { return c_[(i * dim_ + j) * dim_ + k]; }
    const std::vector<cplx>& structure_data() const { return c_; }
    const std::optional<Vector>& unit() const { return unit_; }
    const std::optional<std::vector<int>>& grading() const { return grading_; }

    /// Nonzero entries of the product e_i e_j as (k, c(i,j,k)) pairs.
    const std::vector<std::pair<std::size_t, cplx>>& product_terms(std::size_t i, std::size_t j) const {
        return sparse_[i * dim_ + j];
    }

    Element multiply(const Element& x, const Element& y) const;
    bool is_commutative(double tol = kStructuralTol) const;

    /// Left regular representation: L(e_i) e_j = e_i e_j.
    Matrix left_multiplication(std::size_t i) const;

private:
    std::size_t dim_;
    std::vector<std::string> labels_;
    std::vector<cplx> c_;
    std::optional<Vector> unit_;
    std::optional<std::vector<int>> grading_;
    std::vector<std::vector<std::pair<std::size_t, cplx>>> sparse_;
};

/// A ⊕ C with the adjoined unit as the last basis element.
struct Unitalization {
    Algebra algebra;
    std::size_t base_dim;

    std::size_t unit_index() const { return base_dim; }
    Element unit() const { return Element::basis(base_dim + 1, base_dim); }
    /// a ↦ (a, 0)
    Element embed(const Element& a) const;
    /// p(a, λ) = λ
    cplx scalar_part(const Element& x) const;
};

Unitalization unitalize(const Algebra& a);

struct AlgebraReport {
    bool associative = true;
    double associativity_violation = 0.0;
    std::array<std::size_t, 3> worst_triple{0, 0, 0};
    bool unit_ok = true;
    double unit_violation = 0.0;
    bool grading_ok = true;
    double grading_violation = 0.0;

    bool pass() const { return associative && unit_ok && grading_ok; }
};

AlgebraReport validate_algebra(const Algebra& a, double tol = 1e-12);

namespace algebras {
/// C^k with pointwise product (delta functions as basis).
Algebra pointwise(std::size_t k);
/// Full matrix algebra M_k(C) in the matrix-unit basis E_ij (row-major).
Algebra matrix_units(std::size_t k);
/// Upper triangular 2x2 matrices, basis E11, E12, E22.
Algebra upper_triangular2();
/// C[x]/(x^k), graded by polynomial degree.
Algebra truncated_polynomial(std::size_t k);
/// C^k with the zero product (non-unital).
Algebra zero_product(std::size_t k);
}  // namespace algebras

}  // namespace fkhom
