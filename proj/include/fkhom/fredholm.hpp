#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fkhom/algebra.hpp"
#include "fkhom/cyclic_complex.hpp"

namespace fkhom {

/**
 * m-summable Fredholm module (rep, H = C^n, F) over a finite-dimensional algebra A.
 *
 * `rep` holds one n x n matrix per basis element of A; the adjoined unit of Ã
 * acts as the identity. When m - 1 is even the module is graded and carries γ;
 * otherwise γ is the identity by convention.
 */
class FredholmModule {
public:
    FredholmModule(Algebra algebra, std::vector<Matrix> rep, Matrix F, std::optional<Matrix> gamma, int m);

    const Algebra& algebra() const { return algebra_; }
    const Unitalization& unitalization() const { return tilde_; }
    /// Ã, the algebra every cochain lives over.
    const Algebra& unital_algebra() const { return tilde_.algebra; }
    std::size_t hilbert_dim() const { return static_cast<std::size_t>(F_.rows()); }
    int m() const { return m_; }
    bool graded() const { return (m_ - 1) % 2 == 0; }

    const std::vector<Matrix>& rep() const { return rep_; }
    const Matrix& F() const { return F_; }
    /// γ in the graded case, identity otherwise.
    const Matrix& gamma() const { return gamma_; }
    /// γ^m, which is γ in the graded case (m odd) and 1 otherwise.
    const Matrix& gamma_m() const { return gamma_; }

    /// Image of the i-th basis element of Ã (the last one is the identity).
    const Matrix& rep_tilde(std::size_t i) const;
    /// Image of an arbitrary element of Ã.
    Matrix represent(const Element& x) const;
    /// [F, rep_tilde(i)]
    const Matrix& commutator(std::size_t i) const { return comms_.at(i); }

    /// Same operators, different operator F (used for perturbations and inverses).
    FredholmModule with_F(Matrix F) const;
    FredholmModule with_gamma(Matrix gamma) const;
    /// Reinterpret as an m'-summable module, m' = m + 2k.
    FredholmModule relax_summability(int new_m) const;

private:
    Algebra algebra_;
    Unitalization tilde_;
    std::vector<Matrix> rep_;
    Matrix F_;
    Matrix gamma_;
    int m_;
    Matrix identity_;
    std::vector<Matrix> comms_;
};

struct Check {
    std::string name;
    bool pass = true;
    double violation = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Check> checks;
    std::vector<std::string> warnings;

    bool pass() const;
    const Check* first_failure() const;
    std::string summary() const;
};

ValidationReport validate_module(const FredholmModule& f, double tol = kStructuralTol);

/// τ(x0, ..., x_{m-1}) = ½ Tr(γ^m F [F,x0] ... [F,x_{m-1}]), dense over Ã.
Cochain index_cocycle(const FredholmModule& f);
/// The same functional evaluated directly on elements of Ã (no dense tensor).
cplx index_cocycle_value(const FredholmModule& f, std::span<const Element> args);
/// ⟨τ, x⟩ by contracting operator commutators against the chain; avoids the dense cocycle.
cplx index_pairing(const FredholmModule& f, const Chain& x);

FredholmModule direct_sum(const FredholmModule& a, const FredholmModule& b);
/// (π, H, -F) in the ungraded case, (π, H^op, -F) with γ -> -γ in the graded case.
FredholmModule inverse(const FredholmModule& f);

struct Perturbation {
    FredholmModule perturbed;
    Matrix T;
    double schatten_norm = 0.0;      ///< ‖T‖_m
    double identity_residual = 0.0;  ///< ‖FT + TF + T²‖_∞
};

/// G = F + T; throws InputError when G is not a self-adjoint involution (or breaks the grading).
Perturbation perturb(const FredholmModule& f, const Matrix& T, double tol = kStructuralTol);

bool is_degenerate(const FredholmModule& f, double tol = kStructuralTol);

/// rep -> u rep u*, F -> u F u*, γ -> u γ u*.
FredholmModule unitary_conjugate(const FredholmModule& f, const Matrix& u, double tol = kStructuralTol);

/// Schatten p-norm from singular values.
double schatten_norm(const Matrix& x, double p);
double operator_norm(const Matrix& x);

struct SchattenReport {
    std::vector<double> commutator_norms;  ///< ‖[F, rep(e_i)]‖_m
    std::vector<double> operator_norms;    ///< ‖rep(e_i)‖_∞
    std::vector<double> algebra_norms;     ///< ‖x‖_∞ + ‖[F_{m-1}, x]‖_m
};

SchattenReport schatten_report(const FredholmModule& f);

/// Rewritten module over H+ ⊕ H- with the model operator F_{m-1} in that basis.
struct UniversalEmbedding {
    FredholmModule embedded;
    Matrix basis_change;  ///< unitary u with embedded = u · module · u*
    std::size_t plus_dim = 0;
    SchattenReport report;
};

UniversalEmbedding universal_embed(const FredholmModule& f, double tol = kStructuralTol);

/**
 * Certificate for F1 ⊕ G1 ⊕ G1⁻¹ ⊕ D1 ⊕ H ~_m F2 ⊕ G2 ⊕ G2⁻¹ ⊕ H: the unitary
 * must carry the left side's representation and grading onto the right side's,
 * after which the two operators differ by an m-summable perturbation.
 */
struct StableEquivalenceCertificate {
    FredholmModule f1, f2, g1, g2, d1, h;
    Matrix unitary;
};

ValidationReport check_stable_equivalence(const StableEquivalenceCertificate& cert, double tol = kStructuralTol);

}  // namespace fkhom
