#include "fkhom/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace fkhom {

namespace {

Matrix graded_identity_or(const std::optional<Matrix>& gamma, Eigen::Index n) {
    return gamma ? *gamma : Matrix::Identity(n, n);
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    out.topLeftCorner(a.rows(), a.cols()) = a;
    out.bottomRightCorner(b.rows(), b.cols()) = b;
    return out;
}

}  // namespace

FredholmModule::FredholmModule(Algebra algebra, std::vector<Matrix> rep, Matrix F, std::optional<Matrix> gamma, int m)
    : algebra_(std::move(algebra)), tilde_(unitalize(algebra_)), rep_(std::move(rep)), F_(std::move(F)), m_(m) {
    if (m_ < 1) throw InputError("summability degree m must be positive");
    if (F_.rows() != F_.cols() || F_.rows() == 0) throw InputError("F must be a nonempty square matrix");
    const Eigen::Index n = F_.rows();
    if (rep_.size() != algebra_.dim())
        throw InputError("module needs one representation matrix per algebra basis element (" +
                         std::to_string(algebra_.dim()) + "), got " + std::to_string(rep_.size()));
    for (const auto& r : rep_)
        if (r.rows() != n || r.cols() != n) throw InputError("representation matrices must be n x n with n = dim F");
    if (graded()) {
        if (!gamma) throw InputError("m - 1 even requires a grading operator gamma");
        if (gamma->rows() != n || gamma->cols() != n) throw InputError("gamma must be n x n");
    }
    gamma_ = graded() ? graded_identity_or(gamma, n) : Matrix::Identity(n, n);
    identity_ = Matrix::Identity(n, n);
    comms_.reserve(rep_.size() + 1);
    for (std::size_t i = 0; i <= rep_.size(); ++i) {
        const Matrix& x = rep_tilde(i);
        comms_.push_back(F_ * x - x * F_);
    }
}

const Matrix& FredholmModule::rep_tilde(std::size_t i) const {
    if (i < rep_.size()) return rep_[i];
    if (i == rep_.size()) return identity_;
    throw InputError("basis index " + std::to_string(i) + " out of range for the unitalization");
}

Matrix FredholmModule::represent(const Element& x) const {
    if (x.size() != rep_.size() + 1) throw InputError("element does not belong to the unitalization");
    Matrix out = Matrix::Zero(F_.rows(), F_.cols());
    for (std::size_t i = 0; i <= rep_.size(); ++i)
        if (x[i] != cplx(0.0)) out += x[i] * rep_tilde(i);
    return out;
}

FredholmModule FredholmModule::with_F(Matrix F) const {
    return FredholmModule(algebra_, rep_, std::move(F), graded() ? std::optional<Matrix>(gamma_) : std::nullopt, m_);
}

FredholmModule FredholmModule::with_gamma(Matrix gamma) const {
    if (!graded()) throw InputError("ungraded module has no grading to replace");
    return FredholmModule(algebra_, rep_, F_, std::move(gamma), m_);
}

FredholmModule FredholmModule::relax_summability(int new_m) const {
    if (new_m < m_ || (new_m - m_) % 2 != 0)
        throw InputError("summability can only be relaxed by an even amount (m -> m + 2k)");
    return FredholmModule(algebra_, rep_, F_, graded() ? std::optional<Matrix>(gamma_) : std::nullopt, new_m);
}

bool ValidationReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* ValidationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.pass) return &c;
    return nullptr;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks)
        os << (c.pass ? "PASS " : "FAIL ") << c.name << " (violation " << c.violation << ")"
           << (c.detail.empty() ? "" : " " + c.detail) << "\n";
    for (const auto& w : warnings) os << "WARN " << w << "\n";
    return os.str();
}

ValidationReport validate_module(const FredholmModule& f, double tol) {
    ValidationReport r;
    const Matrix& F = f.F();
    const auto n = F.rows();
    const Matrix I = Matrix::Identity(n, n);
    auto add = [&](std::string name, double v, std::string detail = {}) {
        r.checks.push_back(Check{std::move(name), v <= tol, v, std::move(detail)});
    };

    add("F=F*", max_abs(F - F.adjoint()));
    add("F^2=1", max_abs(F * F - I));

    const Algebra& a = f.algebra();
    double hom = 0.0;
    std::string worst;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) {
            Matrix expect = Matrix::Zero(n, n);
            for (const auto& [k, c] : a.product_terms(i, j)) expect += c * f.rep()[k];
            const double v = max_abs(f.rep()[i] * f.rep()[j] - expect);
            if (v > hom) {
                hom = v;
                worst = "at (" + std::to_string(i) + "," + std::to_string(j) + ")";
            }
        }
    add("rep homomorphism", hom, hom > tol ? worst : std::string{});

    if (f.graded()) {
        const Matrix& g = f.gamma();
        add("gamma=gamma*", max_abs(g - g.adjoint()));
        add("gamma^2=1", max_abs(g * g - I));
        add("gamma F + F gamma = 0", max_abs(g * F + F * g));
        double c = 0.0;
        for (const auto& x : f.rep()) c = std::max(c, max_abs(g * x - x * g));
        add("[gamma, rep] = 0", c);
    }

    // standard assumption: both eigenspaces nonzero (the infinite-dimensional requirement is relaxed)
    const Matrix& split = f.graded() ? f.gamma() : F;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (split + split.adjoint()));
    const auto& ev = es.eigenvalues();
    const auto plus = std::count_if(ev.begin(), ev.end(), [](double v) { return v > 0.0; });
    const auto minus = static_cast<Eigen::Index>(ev.size()) - plus;
    const std::string what = f.graded() ? "gamma" : "F";
    r.checks.push_back(Check{"nontrivial eigenspaces of " + what, plus > 0 && minus > 0, 0.0,
                             "dims +" + std::to_string(plus) + " / -" + std::to_string(minus)});
    r.warnings.push_back("eigenspaces of " + what +
                         " are finite dimensional; the infinite-dimensional standard assumption is relaxed to nonzero");
    return r;
}

namespace {

void require_valid(const FredholmModule& f) {
    const auto rep = validate_module(f);
    if (!rep.pass()) throw InputError("invalid Fredholm module:\n" + rep.summary());
}

}  // namespace

Cochain index_cocycle(const FredholmModule& f) {
    require_valid(f);
    const std::size_t d = f.unital_algebra().dim();
    const int deg = f.m() - 1;
    Cochain tau(d, deg);
    const Matrix lead = 0.5 * f.gamma_m() * f.F();
    const std::size_t rank = static_cast<std::size_t>(f.m());
    std::vector<std::size_t> idx(rank);
    // depth-first over index tuples sharing prefix products
    std::vector<Matrix> prefix(rank + 1);
    prefix[0] = lead;
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t depth, std::size_t flat) {
        if (depth + 1 == rank) {
            for (std::size_t j = 0; j < d; ++j) {
                // Tr(P C_j) without forming the product
                tau.values()[flat * d + j] = (prefix[depth].transpose().cwiseProduct(f.commutator(j))).sum();
            }
            return;
        }
        for (std::size_t i = 0; i < d; ++i) {
            prefix[depth + 1] = prefix[depth] * f.commutator(i);
            walk(depth + 1, flat * d + i);
        }
    };
    walk(0, 0);
    return tau;
}

cplx index_cocycle_value(const FredholmModule& f, std::span<const Element> args) {
    if (args.size() != static_cast<std::size_t>(f.m()))
        throw InputError("index cocycle takes m = " + std::to_string(f.m()) + " arguments");
    Matrix p = 0.5 * f.gamma_m() * f.F();
    for (const auto& x : args) {
        const Matrix rx = f.represent(x);
        p = p * (f.F() * rx - rx * f.F());
    }
    return p.trace();
}

cplx index_pairing(const FredholmModule& f, const Chain& x) {
    const std::size_t d = f.unital_algebra().dim();
    if (x.degree() != f.m() - 1)
        throw InputError("chain degree " + std::to_string(x.degree()) + " does not match m - 1 = " +
                         std::to_string(f.m() - 1));
    if (x.dim() != d) throw InputError("chain dimension does not match the unitalization");
    const std::size_t rank = static_cast<std::size_t>(f.m());
    std::vector<Matrix> prefix(rank + 1);
    prefix[0] = 0.5 * f.gamma_m() * f.F();
    cplx total = 0.0;
    const Eigen::Index n = f.F().rows();
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t depth, std::size_t flat) {
        if (depth + 1 == rank) {
            Matrix s = Matrix::Zero(n, n);
            bool any = false;
            for (std::size_t j = 0; j < d; ++j) {
                const cplx c = x.values()[flat * d + j];
                if (c == cplx(0.0)) continue;
                s += c * f.commutator(j);
                any = true;
            }
            if (any) total += (prefix[depth].transpose().cwiseProduct(s)).sum();
            return;
        }
        for (std::size_t i = 0; i < d; ++i) {
            prefix[depth + 1] = prefix[depth] * f.commutator(i);
            walk(depth + 1, flat * d + i);
        }
    };
    walk(0, 0);
    return total;
}

FredholmModule direct_sum(const FredholmModule& a, const FredholmModule& b) {
    if (a.m() != b.m()) throw InputError("direct sum needs equal summability degrees");
    if (a.graded() != b.graded()) throw InputError("direct sum needs equal parity");
    if (a.algebra().dim() != b.algebra().dim() || a.algebra().structure_data() != b.algebra().structure_data())
        throw InputError("direct sum needs modules over the same algebra");
    std::vector<Matrix> rep;
    for (std::size_t i = 0; i < a.rep().size(); ++i) rep.push_back(block_diag(a.rep()[i], b.rep()[i]));
    std::optional<Matrix> gamma;
    if (a.graded()) gamma = block_diag(a.gamma(), b.gamma());
    return FredholmModule(a.algebra(), std::move(rep), block_diag(a.F(), b.F()), std::move(gamma), a.m());
}

FredholmModule inverse(const FredholmModule& f) {
    if (f.graded()) return FredholmModule(f.algebra(), f.rep(), -f.F(), Matrix(-f.gamma()), f.m());
    return f.with_F(-f.F());
}

Perturbation perturb(const FredholmModule& f, const Matrix& T, double tol) {
    const Matrix& F = f.F();
    if (T.rows() != F.rows() || T.cols() != F.cols()) throw InputError("perturbation must have the shape of F");
    const Matrix G = F + T;
    const auto n = F.rows();
    const double sa = max_abs(G - G.adjoint());
    const double inv = max_abs(G * G - Matrix::Identity(n, n));
    if (sa > tol || inv > tol) {
        std::ostringstream os;
        os << "perturbed operator is not a self-adjoint involution: |G-G*| = " << sa << ", |G^2-1| = " << inv;
        throw InputError(os.str());
    }
    if (f.graded()) {
        const double anti = max_abs(f.gamma() * G + G * f.gamma());
        if (anti > tol) throw InputError("perturbed operator does not anticommute with the shared grading");
    }
    Perturbation p{f.with_F(G), T, schatten_norm(T, f.m()), max_abs(F * T + T * F + T * T)};
    if (p.identity_residual > tol)
        throw InputError("FT + TF + T^2 = 0 fails with residual " + std::to_string(p.identity_residual));
    return p;
}

bool is_degenerate(const FredholmModule& f, double tol) {
    double worst = 0.0;
    for (std::size_t i = 0; i < f.rep().size(); ++i) worst = std::max(worst, max_abs(f.commutator(i)));
    return worst <= tol;
}

FredholmModule unitary_conjugate(const FredholmModule& f, const Matrix& u, double tol) {
    const auto n = f.F().rows();
    if (u.rows() != n || u.cols() != n) throw InputError("unitary must be n x n");
    if (max_abs(u * u.adjoint() - Matrix::Identity(n, n)) > tol) throw InputError("conjugating matrix is not unitary");
    const Matrix ua = u.adjoint();
    std::vector<Matrix> rep;
    for (const auto& x : f.rep()) rep.push_back(u * x * ua);
    std::optional<Matrix> gamma;
    if (f.graded()) gamma = Matrix(u * f.gamma() * ua);
    return FredholmModule(f.algebra(), std::move(rep), u * f.F() * ua, std::move(gamma), f.m());
}

double schatten_norm(const Matrix& x, double p) {
    if (x.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(x);
    double s = 0.0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) s += std::pow(svd.singularValues()(i), p);
    return std::pow(s, 1.0 / p);
}

double operator_norm(const Matrix& x) {
    if (x.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(x);
    return svd.singularValues()(0);
}

namespace {

SchattenReport schatten_with(const FredholmModule& f, const Matrix& model_F) {
    SchattenReport r;
    for (std::size_t i = 0; i < f.rep().size(); ++i) {
        const Matrix& x = f.rep()[i];
        const double op = operator_norm(x);
        r.commutator_norms.push_back(schatten_norm(f.commutator(i), f.m()));
        r.operator_norms.push_back(op);
        r.algebra_norms.push_back(op + schatten_norm(model_F * x - x * model_F, f.m()));
    }
    return r;
}

}  // namespace

SchattenReport schatten_report(const FredholmModule& f) { return schatten_with(f, f.F()); }

UniversalEmbedding universal_embed(const FredholmModule& f, double tol) {
    const auto n = f.F().rows();
    const Matrix& split = f.graded() ? f.gamma() : f.F();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (split + split.adjoint()));
    // eigenbasis ordered by eigenvalue (+1 block first), then by solver index
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return es.eigenvalues()(a) > es.eigenvalues()(b); });
    Matrix w(n, n);
    Eigen::Index plus = 0;
    for (Eigen::Index c = 0; c < n; ++c) {
        w.col(c) = es.eigenvectors().col(order[static_cast<std::size_t>(c)]);
        if (es.eigenvalues()(order[static_cast<std::size_t>(c)]) > 0.0) ++plus;
    }
    if (plus == 0 || plus == n)
        throw InputError("universal embedding needs both eigenspaces of " + std::string(f.graded() ? "gamma" : "F") +
                         " to be nonzero");
    Matrix u = w.adjoint();
    Matrix model_F = Matrix::Zero(n, n);
    std::optional<Matrix> gamma;
    if (f.graded()) {
        if (2 * plus != n)
            throw InputError("graded universal embedding needs eigenspaces of gamma of equal dimension");
        const Matrix Fb = u * f.F() * u.adjoint();
        const Matrix B = Fb.topRightCorner(plus, plus);
        if (max_abs(B * B.adjoint() - Matrix::Identity(plus, plus)) > tol)
            throw InputError("off-diagonal block of F is not unitary");
        Matrix rot = Matrix::Identity(n, n);
        rot.bottomRightCorner(plus, plus) = B;
        u = rot * u;
        model_F.topRightCorner(plus, plus) = Matrix::Identity(plus, plus);
        model_F.bottomLeftCorner(plus, plus) = Matrix::Identity(plus, plus);
        Matrix g = Matrix::Identity(n, n);
        g.bottomRightCorner(n - plus, n - plus) *= -1.0;
        gamma = g;
    } else {
        model_F.topLeftCorner(plus, plus) = Matrix::Identity(plus, plus);
        model_F.bottomRightCorner(n - plus, n - plus) = -Matrix::Identity(n - plus, n - plus);
    }
    std::vector<Matrix> rep;
    for (const auto& x : f.rep()) rep.push_back(u * x * u.adjoint());
    FredholmModule embedded(f.algebra(), std::move(rep), model_F, std::move(gamma), f.m());
    SchattenReport report = schatten_with(embedded, model_F);
    return UniversalEmbedding{std::move(embedded), std::move(u), static_cast<std::size_t>(plus), std::move(report)};
}

ValidationReport check_stable_equivalence(const StableEquivalenceCertificate& c, double tol) {
    ValidationReport r;
    auto add = [&](std::string name, bool ok, double v, std::string detail = {}) {
        r.checks.push_back(Check{std::move(name), ok, v, std::move(detail)});
    };
    for (const auto* mod : {&c.f1, &c.f2, &c.g1, &c.g2, &c.d1, &c.h}) {
        const auto v = validate_module(*mod, tol);
        const Check* bad = v.first_failure();
        add("component valid", bad == nullptr, bad ? bad->violation : 0.0, bad ? bad->name : std::string{});
    }
    add("D1 degenerate", is_degenerate(c.d1, tol), 0.0);

    const FredholmModule lhs = direct_sum(direct_sum(direct_sum(direct_sum(c.f1, c.g1), inverse(c.g1)), c.d1), c.h);
    const FredholmModule rhs = direct_sum(direct_sum(direct_sum(c.f2, c.g2), inverse(c.g2)), c.h);
    const auto n = lhs.F().rows();
    if (rhs.F().rows() != n || c.unitary.rows() != n || c.unitary.cols() != n) {
        add("dimensions agree", false, 0.0,
            "lhs " + std::to_string(n) + ", rhs " + std::to_string(rhs.F().rows()));
        return r;
    }
    const Matrix& u = c.unitary;
    const double unit = max_abs(u * u.adjoint() - Matrix::Identity(n, n));
    add("unitary", unit <= tol, unit);
    double rep = 0.0;
    for (std::size_t i = 0; i < lhs.rep().size(); ++i)
        rep = std::max(rep, max_abs(u * lhs.rep()[i] * u.adjoint() - rhs.rep()[i]));
    add("u pi_L u* = pi_R", rep <= tol, rep);
    if (lhs.graded()) {
        const double g = max_abs(u * lhs.gamma() * u.adjoint() - rhs.gamma());
        add("u gamma_L u* = gamma_R", g <= tol, g);
    }
    const Matrix T = rhs.F() - u * lhs.F() * u.adjoint();
    add("operator difference is m-summable", true, schatten_norm(T, lhs.m()), "reported as ||T||_m");
    return r;
}

}  // namespace fkhom
