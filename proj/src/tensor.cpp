#include "fkhom/tensor.hpp"

#include <cmath>
#include <string>

namespace fkhom {

void check_budget(std::size_t dim, std::size_t rank) {
    if (rank > static_cast<std::size_t>(kMaxDegree) + 2)
        throw BudgetError("tensor rank " + std::to_string(rank) + " exceeds the degree limit " +
                          std::to_string(kMaxDegree));
    const double entries = std::pow(static_cast<double>(dim), static_cast<double>(rank));
    if (entries > static_cast<double>(kMaxEntries))
        throw BudgetError("dense tensor over dim " + std::to_string(dim) + " at rank " + std::to_string(rank) +
                          " exceeds the entry budget");
}

Tensor::Tensor(std::size_t dim, std::size_t rank) : dim_(dim), rank_(rank) {
    check_budget(dim, rank);
    std::size_t n = 1;
    for (std::size_t r = 0; r < rank; ++r) n *= dim;
    data_.assign(n, cplx(0.0));
}

std::size_t Tensor::flatten(std::span<const std::size_t> idx) const {
    std::size_t flat = 0;
    for (std::size_t i : idx) flat = flat * dim_ + i;
    return flat;
}

void Tensor::unflatten(std::size_t flat, std::span<std::size_t> idx) const {
    for (std::size_t r = rank_; r-- > 0;) {
        idx[r] = flat % dim_;
        flat /= dim_;
    }
}

double Tensor::max_abs() const {
    double m = 0.0;
    for (const cplx& v : data_) m = std::max(m, std::abs(v));
    return m;
}

Tensor& Tensor::operator+=(const Tensor& o) {
    if (!same_shape(o)) throw InputError("tensor shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
    if (!same_shape(o)) throw InputError("tensor shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Tensor& Tensor::operator*=(cplx s) {
    for (cplx& v : data_) v *= s;
    return *this;
}

void IndexOdometer::next() {
    for (std::size_t r = idx_.size(); r-- > 0;) {
        if (++idx_[r] < dim_) return;
        idx_[r] = 0;
    }
    done_ = true;
}

}  // namespace fkhom
