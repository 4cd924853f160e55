#include "fkhom/models.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace fkhom::models {

namespace {

Matrix dft(std::size_t N) {
    const auto n = static_cast<Eigen::Index>(N);
    Matrix W(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(N));
    for (Eigen::Index x = 0; x < n; ++x)
        for (Eigen::Index k = 0; k < n; ++k)
            W(x, k) = s * std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((x * k) % n) /
                                              static_cast<double>(N));
    return W;
}

Matrix hermitian_part(const Matrix& x) { return 0.5 * (x + x.adjoint()); }

// Projection onto the span of columns [begin, begin + count) of U.
Matrix column_projection(const Matrix& U, Eigen::Index begin, Eigen::Index count) {
    if (count == 0) return Matrix::Zero(U.rows(), U.rows());
    const Matrix c = U.middleCols(begin, count);
    return hermitian_part(c * c.adjoint());
}

}  // namespace

FredholmModule discrete_hardy(std::size_t N) {
    if (N < 4 || N % 2 != 0) throw InputError("discrete_hardy needs an even N >= 4");
    const auto n = static_cast<Eigen::Index>(N);
    const Matrix W = dft(N);
    const Matrix P = column_projection(W, 0, n / 2);
    const Matrix F = hermitian_part(2.0 * P - Matrix::Identity(n, n));
    std::vector<Matrix> rep;
    for (Eigen::Index x = 0; x < n; ++x) {
        Matrix e = Matrix::Zero(n, n);
        e(x, x) = 1.0;
        rep.push_back(std::move(e));
    }
    return FredholmModule(algebras::pointwise(N), std::move(rep), F, std::nullopt, 2);
}

Element grid_function(const std::vector<cplx>& values) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(values.size() + 1));
    for (std::size_t i = 0; i < values.size(); ++i) v(static_cast<Eigen::Index>(i)) = values[i];
    return Element(std::move(v));
}

namespace {

std::vector<cplx> winding_values(std::size_t N, int w) {
    std::vector<cplx> u(N);
    for (std::size_t x = 0; x < N; ++x) {
        const long long phase = (static_cast<long long>(x) * w) % static_cast<long long>(N);
        u[x] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(N));
    }
    return u;
}

}  // namespace

Element winding_symbol(std::size_t N, int w) { return grid_function(winding_values(N, w)); }

Matrix compressed_symbol(const std::vector<cplx>& values) {
    const std::size_t N = values.size();
    if (N < 4 || N % 2 != 0) throw InputError("compressed symbol needs an even grid of size >= 4");
    // Fourier coefficients û(j) = (1/N) Σ_x u(x) e^{-2πi x j/N}
    std::vector<cplx> hat(N, 0.0);
    for (std::size_t j = 0; j < N; ++j) {
        cplx s = 0.0;
        for (std::size_t x = 0; x < N; ++x)
            s += values[x] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>((x * j) % N) /
                                                 static_cast<double>(N));
        hat[j] = s / static_cast<double>(N);
    }
    const auto h = static_cast<Eigen::Index>(N / 2);
    Matrix C(h, h);
    for (Eigen::Index k = 0; k < h; ++k)
        for (Eigen::Index l = 0; l < h; ++l)
            C(k, l) = hat[static_cast<std::size_t>((k - l + static_cast<Eigen::Index>(N)) % static_cast<Eigen::Index>(N))];
    return C;
}

IndexOracle hardy_index_oracle(const std::vector<cplx>& values, double threshold) {
    const Matrix C = compressed_symbol(values);
    Eigen::JacobiSVD<Matrix> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const Eigen::Index h = C.rows();
    Eigen::Index null = 0;
    IndexOracle r;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) < threshold)
            ++null;
        else
            r.smallest_kept = s(i);
    }
    // rank of the low-mode compression restricted to a null space (basis independent)
    auto low_count = [&](const Matrix& basis) {
        if (basis.cols() == 0) return 0;
        const Eigen::Index q = h / 2;
        const Matrix low = basis.topRows(q);
        Eigen::SelfAdjointEigenSolver<Matrix> es(low.adjoint() * low);
        int c = 0;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            if (es.eigenvalues()(i) > 0.5) ++c;
        return c;
    };
    const Matrix ker = svd.matrixV().rightCols(null);
    const Matrix coker = svd.matrixU().rightCols(null);
    r.kernel_low = low_count(ker);
    r.cokernel_low = low_count(coker);
    r.kernel_edge = static_cast<int>(null) - r.kernel_low;
    r.cokernel_edge = static_cast<int>(null) - r.cokernel_low;
    r.index = r.kernel_low - r.cokernel_low;
    return r;
}

Matrix random_unitary(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const auto k = static_cast<Eigen::Index>(n);
    Matrix z(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) z(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix Q = qr.householderQ();
    const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < k; ++j) {
        const double a = std::abs(R(j, j));
        if (a > 0.0) Q.col(j) *= R(j, j) / a;
    }
    return Q;
}

Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    const auto k = static_cast<Eigen::Index>(n);
    Matrix z(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) z(i, j) = cplx(g(rng), g(rng));
    return hermitian_part(z);
}

FredholmModule toy_even_module(std::size_t n, std::uint64_t seed, int m) {
    if (n < 2) throw InputError("toy_even_module needs n >= 2");
    if (m < 1 || m % 2 == 0) throw InputError("toy_even_module is graded and needs odd m");
    std::mt19937_64 rng(seed);
    const auto k = static_cast<Eigen::Index>(n);
    const Matrix Up = random_unitary(n, rng);
    const Matrix Um = random_unitary(n, rng);
    const Matrix V = random_unitary(n, rng);

    const std::vector<Eigen::Index> plus{1, 1, k - 2}, minus{k - 2, 1, 1};
    std::vector<Matrix> rep;
    Eigen::Index bp = 0, bm = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        Matrix x = Matrix::Zero(2 * k, 2 * k);
        x.topLeftCorner(k, k) = column_projection(Up, bp, plus[i]);
        x.bottomRightCorner(k, k) = column_projection(Um, bm, minus[i]);
        bp += plus[i];
        bm += minus[i];
        rep.push_back(std::move(x));
    }
    Matrix F = Matrix::Zero(2 * k, 2 * k);
    F.topRightCorner(k, k) = V;
    F.bottomLeftCorner(k, k) = V.adjoint();
    Matrix gamma = Matrix::Identity(2 * k, 2 * k);
    gamma.bottomRightCorner(k, k) *= -1.0;
    return FredholmModule(algebras::pointwise(3), std::move(rep), F, gamma, m);
}

FredholmModule random_reflection_module(std::size_t n, const Algebra& algebra, std::uint64_t seed, int m) {
    if (m < 2 || m % 2 != 0) throw InputError("random_reflection_module is ungraded and needs even m");
    const std::size_t d = algebra.dim();
    if (d == 0 || n < d || n < 2) throw InputError("random_reflection_module needs n >= max(2, dim A)");
    std::mt19937_64 rng(seed);
    const auto k = static_cast<Eigen::Index>(n);
    const Matrix W = random_unitary(n, rng);
    const Matrix U = random_unitary(n, rng);
    const auto r = static_cast<Eigen::Index>(n / d);
    std::vector<Matrix> rep;
    for (std::size_t i = 0; i < d; ++i) {
        const Matrix L = algebra.left_multiplication(i);
        Matrix block = Matrix::Zero(k, k);
        for (Eigen::Index a = 0; a < L.rows(); ++a)
            for (Eigen::Index b = 0; b < L.cols(); ++b)
                block.block(a * r, b * r, r, r) = L(a, b) * Matrix::Identity(r, r);
        rep.push_back(W * block * W.adjoint());
    }
    Matrix D = Matrix::Identity(k, k);
    D.bottomRightCorner(k - k / 2, k - k / 2) *= -1.0;
    const Matrix F = hermitian_part(U * D * U.adjoint());
    return FredholmModule(algebra, std::move(rep), F, std::nullopt, m);
}

Matrix conjugation_perturbation(const FredholmModule& f, std::uint64_t seed, double eps) {
    const auto n = static_cast<Eigen::Index>(f.hilbert_dim());
    if (eps == 0.0) return Matrix::Zero(n, n);
    std::mt19937_64 rng(seed);
    Matrix K = random_hermitian(f.hilbert_dim(), rng);
    if (f.graded()) K = 0.5 * (K + f.gamma() * K * f.gamma());
    K /= operator_norm(K);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(K));
    Vector phases(n);
    for (Eigen::Index i = 0; i < n; ++i) phases(i) = std::polar(1.0, eps * es.eigenvalues()(i));
    const Matrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    const Matrix G = hermitian_part(u * f.F() * u.adjoint());
    return G - f.F();
}

}  // namespace fkhom::models
