#include "fkhom/algebra.hpp"

#include <cmath>

namespace fkhom {

Element Element::basis(std::size_t dim, std::size_t i) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(i)) = 1.0;
    return Element(std::move(v));
}

Algebra::Algebra(std::size_t dim, std::vector<std::string> labels, std::vector<cplx> structure,
                 std::optional<Vector> unit, std::optional<std::vector<int>> grading)
    : dim_(dim), labels_(std::move(labels)), c_(std::move(structure)), unit_(std::move(unit)),
      grading_(std::move(grading)) {
    if (dim_ == 0) throw InputError("algebra dimension must be positive");
    if (c_.size() != dim_ * dim_ * dim_)
        throw InputError("structure constants must have dim^3 = " + std::to_string(dim_ * dim_ * dim_) +
                         " entries, got " + std::to_string(c_.size()));
    if (labels_.empty()) {
        for (std::size_t i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
    }
    if (labels_.size() != dim_) throw InputError("label count does not match algebra dimension");
    if (unit_ && static_cast<std::size_t>(unit_->size()) != dim_)
        throw InputError("unit vector length does not match algebra dimension");
    if (grading_) {
        if (grading_->size() != dim_) throw InputError("grading length does not match algebra dimension");
        for (int d : *grading_)
            if (d < 0) throw InputError("grading degrees must be non-negative");
    }
    sparse_.resize(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                if (const cplx c = this->structure(i, j, k); c != cplx(0.0)) sparse_[i * dim_ + j].emplace_back(k, c);
}

Element Algebra::multiply(const Element& x, const Element& y) const {
    if (x.size() != dim_ || y.size() != dim_)
        throw InputError("multiply: element length does not match algebra dimension " + std::to_string(dim_));
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
    for (std::size_t i = 0; i < dim_; ++i) {
        if (x[i] == cplx(0.0)) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            const cplx xy = x[i] * y[j];
            if (xy == cplx(0.0)) continue;
            for (const auto& [k, c] : product_terms(i, j)) out(static_cast<Eigen::Index>(k)) += xy * c;
        }
    }
    return Element(std::move(out));
}

bool Algebra::is_commutative(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            for (std::size_t k = 0; k < dim_; ++k)
                if (std::abs(structure(i, j, k) - structure(j, i, k)) > tol) return false;
    return true;
}

Matrix Algebra::left_multiplication(std::size_t i) const {
    const auto d = static_cast<Eigen::Index>(dim_);
    Matrix l = Matrix::Zero(d, d);
    for (std::size_t j = 0; j < dim_; ++j)
        for (const auto& [k, c] : product_terms(i, j))
            l(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) += c;
    return l;
}

Element Unitalization::embed(const Element& a) const {
    if (a.size() != base_dim) throw InputError("embed: element does not belong to the base algebra");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(base_dim + 1));
    v.head(static_cast<Eigen::Index>(base_dim)) = a.coeffs();
    return Element(std::move(v));
}

cplx Unitalization::scalar_part(const Element& x) const {
    if (x.size() != base_dim + 1) throw InputError("scalar_part: element does not belong to the unitalization");
    return x[base_dim];
}

Unitalization unitalize(const Algebra& a) {
    const std::size_t d = a.dim();
    const std::size_t dt = d + 1;
    std::vector<cplx> c(dt * dt * dt, cplx(0.0));
    auto at = [&](std::size_t i, std::size_t j, std::size_t k) -> cplx& { return c[(i * dt + j) * dt + k]; };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) at(i, j, k) = a.structure(i, j, k);
    for (std::size_t i = 0; i < dt; ++i) {
        at(i, d, i) = 1.0;
        at(d, i, i) = 1.0;
    }
    auto labels = a.labels();
    labels.push_back("1");
    std::optional<std::vector<int>> grading;
    if (a.grading()) {
        grading = *a.grading();
        grading->push_back(0);
    }
    Vector unit = Vector::Zero(static_cast<Eigen::Index>(dt));
    unit(static_cast<Eigen::Index>(d)) = 1.0;
    return Unitalization{Algebra(dt, std::move(labels), std::move(c), std::move(unit), std::move(grading)), d};
}

AlgebraReport validate_algebra(const Algebra& a, double tol) {
    AlgebraReport r;
    const std::size_t d = a.dim();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const Element eij = a.multiply(Element::basis(d, i), Element::basis(d, j));
            for (std::size_t k = 0; k < d; ++k) {
                const Element ek = Element::basis(d, k);
                const Element lhs = a.multiply(eij, ek);
                const Element rhs = a.multiply(Element::basis(d, i), a.multiply(Element::basis(d, j), ek));
                const double v = (lhs.coeffs() - rhs.coeffs()).cwiseAbs().maxCoeff();
                if (v > r.associativity_violation) {
                    r.associativity_violation = v;
                    r.worst_triple = {i, j, k};
                }
            }
        }
    }
    r.associative = r.associativity_violation <= tol;

    if (a.unit()) {
        const Element u(*a.unit());
        for (std::size_t i = 0; i < d; ++i) {
            const Element ei = Element::basis(d, i);
            r.unit_violation = std::max(r.unit_violation, (a.multiply(u, ei).coeffs() - ei.coeffs()).cwiseAbs().maxCoeff());
            r.unit_violation = std::max(r.unit_violation, (a.multiply(ei, u).coeffs() - ei.coeffs()).cwiseAbs().maxCoeff());
        }
        r.unit_ok = r.unit_violation <= tol;
    }

    if (a.grading()) {
        const auto& g = *a.grading();
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                for (std::size_t k = 0; k < d; ++k)
                    if (g[k] != g[i] + g[j]) r.grading_violation = std::max(r.grading_violation, std::abs(a.structure(i, j, k)));
        r.grading_ok = r.grading_violation <= tol;
    }
    return r;
}

namespace algebras {

Algebra pointwise(std::size_t k) {
    std::vector<cplx> c(k * k * k, cplx(0.0));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) {
        c[(i * k + i) * k + i] = 1.0;
        labels.push_back("d" + std::to_string(i));
    }
    return Algebra(k, std::move(labels), std::move(c), Vector::Ones(static_cast<Eigen::Index>(k)));
}

Algebra matrix_units(std::size_t k) {
    const std::size_t d = k * k;
    std::vector<cplx> c(d * d * d, cplx(0.0));
    std::vector<std::string> labels;
    Vector unit = Vector::Zero(static_cast<Eigen::Index>(d));
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            labels.push_back("E" + std::to_string(a + 1) + std::to_string(b + 1));
            // E_ab E_bc = E_ac
            for (std::size_t e = 0; e < k; ++e) c[((a * k + b) * d + (b * k + e)) * d + (a * k + e)] = 1.0;
        }
        unit(static_cast<Eigen::Index>(a * k + a)) = 1.0;
    }
    return Algebra(d, std::move(labels), std::move(c), std::move(unit));
}

Algebra upper_triangular2() {
    // basis E11, E12, E22 as indices into the 2x2 matrix units
    const std::array<std::pair<int, int>, 3> basis{{{0, 0}, {0, 1}, {1, 1}}};
    std::vector<cplx> c(27, cplx(0.0));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            if (basis[i].second != basis[j].first) continue;
            const std::pair<int, int> prod{basis[i].first, basis[j].second};
            for (std::size_t k = 0; k < 3; ++k)
                if (basis[k] == prod) c[(i * 3 + j) * 3 + k] = 1.0;
        }
    Vector unit(3);
    unit << 1.0, 0.0, 1.0;
    return Algebra(3, {"E11", "E12", "E22"}, std::move(c), std::move(unit));
}

Algebra truncated_polynomial(std::size_t k) {
    std::vector<cplx> c(k * k * k, cplx(0.0));
    std::vector<std::string> labels;
    std::vector<int> grading;
    for (std::size_t i = 0; i < k; ++i) {
        labels.push_back("x^" + std::to_string(i));
        grading.push_back(static_cast<int>(i));
        for (std::size_t j = 0; i + j < k; ++j) c[(i * k + j) * k + i + j] = 1.0;
    }
    Vector unit = Vector::Zero(static_cast<Eigen::Index>(k));
    unit(0) = 1.0;
    return Algebra(k, std::move(labels), std::move(c), std::move(unit), std::move(grading));
}

Algebra zero_product(std::size_t k) {
    return Algebra(k, {}, std::vector<cplx>(k * k * k, cplx(0.0)));
}

}  // namespace algebras

}  // namespace fkhom
