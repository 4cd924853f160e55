#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fkhom {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Malformed or inconsistent input (dimension mismatch, invalid module, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A dense computation would exceed the documented size limits.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Tolerance ladder.
inline constexpr double kStructuralTol = 1e-10;
inline constexpr double kDerivedTol = 1e-9;
inline constexpr double kAnalyticTol = 1e-6;

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace fkhom
