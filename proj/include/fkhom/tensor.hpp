#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fkhom/core.hpp"

namespace fkhom {

/// Largest admitted degree for dense cochains and chains.
inline constexpr int kMaxDegree = 6;
/// Largest admitted entry count for a dense tensor: 6^8, enough for b applied to
/// a degree-6 cochain over a 6-dimensional unitalization.
inline constexpr std::size_t kMaxEntries = 1679616;

/// Throws BudgetError when a rank-`rank` tensor over `dim` would exceed the limits.
void check_budget(std::size_t dim, std::size_t rank);

/**
 * Dense complex tensor of fixed rank with all extents equal to `dim`, stored
 * row-major (last index fastest). Rank 0 holds a single scalar.
 */
class Tensor {
public:
    Tensor() = default;
    Tensor(std::size_t dim, std::size_t rank);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rank_; }
    std::size_t size() const { return data_.size(); }

    cplx& operator[](std::size_t flat) { return data_[flat]; }
    cplx operator[](std::size_t flat) const { return data_[flat]; }
    cplx& at(std::span<const std::size_t> idx) { return data_[flatten(idx)]; }
    cplx at(std::span<const std::size_t> idx) const { return data_[flatten(idx)]; }

    std::size_t flatten(std::span<const std::size_t> idx) const;
    /// Inverse of flatten.
    void unflatten(std::size_t flat, std::span<std::size_t> idx) const;

    const std::vector<cplx>& data() const { return data_; }
    std::vector<cplx>& data() { return data_; }

    double max_abs() const;
    bool same_shape(const Tensor& o) const { return dim_ == o.dim_ && rank_ == o.rank_; }

    Tensor& operator+=(const Tensor& o);
    Tensor& operator-=(const Tensor& o);
    Tensor& operator*=(cplx s);
    friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
    friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
    friend Tensor operator*(Tensor a, cplx s) { return a *= s; }

private:
    std::size_t dim_ = 0;
    std::size_t rank_ = 0;
    std::vector<cplx> data_;
};

/// Odometer over all index tuples of a given rank, in lexicographic order.
class IndexOdometer {
public:
    IndexOdometer(std::size_t dim, std::size_t rank) : dim_(dim), idx_(rank, 0), done_(dim == 0 && rank > 0) {}
    bool done() const { return done_; }
    const std::vector<std::size_t>& index() const { return idx_; }
    void next();

private:
    std::size_t dim_;
    std::vector<std::size_t> idx_;
    bool done_;
};

}  // namespace fkhom
