#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>

#include "fkhom/cyclic_complex.hpp"
#include "fkhom/dga.hpp"
#include "fkhom/fredholm.hpp"

namespace fkhom {

using Rational = boost::rational<long long>;

/// p(t) + q(t) dt on [0,1] with exact rational coefficients (index = power of t).
struct IntervalForm {
    std::vector<Rational> p;
    std::vector<Rational> q;

    static IntervalForm monomial(int form_degree, int power, Rational c = 1);

    IntervalForm operator+(const IntervalForm& o) const;
    IntervalForm operator*(const IntervalForm& o) const;
    /// d(p + q dt) = p' dt
    IntervalForm d() const;
    /// ∫₀¹ q(t) dt
    Rational integral() const;
    Rational p_at(const Rational& t) const;
    bool operator==(const IntervalForm& o) const;
};

/**
 * Element of Ω*([0,1]) ⊗̂ Ω_τ as Σ t^j (dt)^f ⊗ ω_{f,j}. Products carry the
 * Koszul sign (-1)^{|ω| f'} and terms with dt·dt vanish.
 */
class ChainElement {
public:
    using Key = std::pair<int, int>;  // (form degree f, power j)

    ChainElement() = default;
    ChainElement(int f, int j, DGAElement w);

    const std::map<Key, DGAElement>& terms() const { return terms_; }
    void add(int f, int j, const DGAElement& w);
    ChainElement operator+(const ChainElement& o) const;
    ChainElement operator-(const ChainElement& o) const;
    ChainElement operator*(cplx s) const;

private:
    std::map<Key, DGAElement> terms_;
};

double max_abs_diff(const ChainElement& x, const ChainElement& y);

/// Operator image of a chain element: (f, j, word degree k) -> matrix.
class RepChain {
public:
    using Key = std::tuple<int, int, int>;

    const std::map<Key, Matrix>& terms() const { return terms_; }
    void add(int f, int j, int k, const Matrix& x);

private:
    std::map<Key, Matrix> terms_;
};

/**
 * The perturbation chain Ω_T over Ω*([0,1]) ⊗̂ Ω_τ for G = F + T:
 *   ∇ = d ⊗ 1 + 1 ⊗ d + t [τ, ·],  θ = dt ⊗ τ + (t² - t) ⊗ τ²,
 *   ∫(α ⊗ ω) = ½ (∫₀¹ α) Tr(γ^m F π(dω)) for one-forms α.
 * Symbolic operations act on ChainElement; the rep_* variants act on operator images.
 */
class PerturbationChain {
public:
    PerturbationChain(FredholmModule f, Matrix T, double tol = kStructuralTol);

    const FredholmModule& module() const { return f_; }
    const FredholmModule& perturbed() const { return g_; }
    const Matrix& T() const { return T_; }
    int m() const { return f_.m(); }
    const DGA& dga() const { return dga_; }

    ChainElement multiply(const ChainElement& x, const ChainElement& y) const;
    ChainElement rho(const Element& a) const;
    ChainElement connection_apply(const ChainElement& x) const;
    ChainElement curvature() const;
    /// θ^i; i > m throws BudgetError.
    ChainElement curvature_power(int i) const;
    cplx graded_trace(const ChainElement& x) const;
    /// Restriction to t = 0 (side 0) or t = 1 (side 1); one-form parts drop.
    DGAElement restrict_to(const ChainElement& x, int side) const;
    /// Boundary connection: d at t = 0, d + [τ, ·] at t = 1.
    DGAElement boundary_connection(const DGAElement& w, int side) const;

    RepChain represent(const ChainElement& x) const;
    RepChain rep_multiply(const RepChain& x, const RepChain& y) const;
    RepChain rep_rho(std::size_t i) const;
    RepChain rep_connection(const RepChain& x) const;
    RepChain rep_curvature_power(int i) const;
    cplx rep_graded_trace(const RepChain& x) const;

private:
    FredholmModule f_;
    Matrix T_;
    FredholmModule g_;
    DGA dga_;
    mutable std::vector<RepChain> theta_powers_;
};

/**
 * Ch^{m-2k}(a0, ..., a_{m-2k}) = (-1)^k/(m-k)! Σ_{i0+...=k} ∫ ρ(a0) θ^{i0} ∇ρ(a1) θ^{i1} ... ∇ρ(a_{m-2k}) θ^{i_{m-2k}}
 * on basis indices of Ã. k = 0 is the top component.
 */
cplx chern_component(const PerturbationChain& c, int k, std::span<const std::size_t> args);
/// Same sum evaluated through the symbolic chain and π (slow; used as a cross-check).
cplx chern_component_symbolic(const PerturbationChain& c, int k, std::span<const Element> args);
/// Dense degree m-2k cochain over Ã.
Cochain chern_cochain(const PerturbationChain& c, int k);
/// (Ch^m, Ch^{m-2}, ...) of the chain.
TotalCochain chain_chern_character(const PerturbationChain& c);

enum class BoundarySide { F, G };

/// Ch of the cycle (Ω_τ, d, ∫) for F or (Ω_τ, d + [τ, ·], ∫) for G, degree m-1.
Cochain boundary_cycle_chern(const PerturbationChain& c, BoundarySide side);

/// ψ of top degree m-2; empty (top degree -1) at m = 1. Even m carries the -Ch⁰(1)·p correction.
TotalCochain witness_cochain(const PerturbationChain& c);

struct WitnessCheck {
    bool pass = false;
    double max_residual = 0.0;
    int worst_degree = -1;
    std::vector<std::size_t> worst_tuple;
    bool reduced = false;
    double reduced_violation = 0.0;
};

/// Compares (b+B)ψ with ((τ_G - τ_F)/(m-1)!, 0, ...) and checks i*(ψ) = 0 exactly.
WitnessCheck check_witness(const PerturbationChain& c, const TotalCochain& psi, double tol = 1e-8);

/// (b+B) Ch(Ω) against S Ch(∂Ω) with ∂Ω = Ω̂_G - Ω̂_F.
WitnessCheck verify_cobordism_identity(const PerturbationChain& c, double tol = 1e-8);

struct InvarianceReport {
    bool pass = false;
    double max_residual = 0.0;
    int worst_degree = -1;
    std::vector<std::size_t> worst_tuple;
    bool reduced = false;
    double involution_residual = 0.0;        ///< ‖FT + TF + T²‖
    double perturbation_norm = 0.0;     ///< ‖T‖_m
    double tau_difference = 0.0;        ///< max |τ_G - τ_F|
    TotalCochain witness;
    SchattenReport schatten_f;
    SchattenReport schatten_g;
};

InvarianceReport verify_perturbation_invariance(const FredholmModule& f, const Matrix& T, double tol = 1e-8);

/// Lexicographic compositions of `total` into `parts` non-negative integers.
std::vector<std::vector<int>> compositions(int total, int parts);

}  // namespace fkhom
