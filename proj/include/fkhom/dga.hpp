#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fkhom/algebra.hpp"
#include "fkhom/fredholm.hpp"

namespace fkhom {

enum class LetterKind : std::uint8_t { Alg, Tau, DAlg, DTau };

/// Generator of Ω(Ã_τ): a basis element a, τ, da, or dτ (the last only in raw input).
struct Letter {
    LetterKind kind = LetterKind::Alg;
    std::size_t index = 0;

    static Letter alg(std::size_t i) { return {LetterKind::Alg, i}; }
    static Letter tau() { return {LetterKind::Tau, 0}; }
    static Letter d_alg(std::size_t i) { return {LetterKind::DAlg, i}; }
    static Letter d_tau() { return {LetterKind::DTau, 0}; }

    int degree() const { return kind == LetterKind::Alg ? 0 : (kind == LetterKind::DTau ? 2 : 1); }
    friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;
int word_degree(const Word& w);

/// Linear combination of normal-form words. The empty word is the unit.
class DGAElement {
public:
    using Terms = std::map<Word, cplx>;

    DGAElement() = default;
    explicit DGAElement(Terms terms);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Degree of a homogeneous element; -1 for zero, throws when mixed.
    int degree() const;
    double max_abs() const;

    DGAElement operator+(const DGAElement& o) const;
    DGAElement operator-(const DGAElement& o) const;
    DGAElement operator*(cplx s) const;

private:
    Terms terms_;
};

/// Largest coefficient of x - y.
double max_abs_diff(const DGAElement& x, const DGAElement& y);

/**
 * Ω_τ = Ω(Ã_τ)/(dτ + τ²) over a unitalization Ã, with the unit as last basis element.
 *
 * Normal form: no dτ, no unit letters, and alg letters only at the start of a
 * word or right after τ. Rewrite rules
 *   dτ -> -τ τ,  1 -> (empty),  d1 -> 0,
 *   a b -> ab,   da b -> d(ab) - a db.
 */
class DGA {
public:
    explicit DGA(Unitalization tilde);

    const Algebra& algebra() const { return tilde_.algebra; }
    std::size_t dim() const { return tilde_.algebra.dim(); }
    std::size_t unit_index() const { return tilde_.unit_index(); }

    DGAElement zero() const { return {}; }
    DGAElement one() const;
    DGAElement alg(std::size_t i) const;
    /// ρ(x) for an arbitrary element of Ã.
    DGAElement rho(const Element& x) const;
    DGAElement tau() const;
    DGAElement d_alg(std::size_t i) const;

    /// Normal form of a raw word.
    DGAElement word(const Word& raw, cplx coeff = 1.0) const;
    /// Normal form of a raw combination. With `order` set, rewrite sites are chosen at random.
    DGAElement normalize(const DGAElement::Terms& raw, std::mt19937_64* order = nullptr) const;
    bool is_normal(const Word& w) const;

    DGAElement multiply(const DGAElement& x, const DGAElement& y) const;
    /// Graded Leibniz: d(a) = da, d(τ) = -τ², d(da) = 0.
    DGAElement differential(const DGAElement& x) const;
    /// [x, y] = xy - (-1)^{|x||y|} yx for homogeneous x, y.
    DGAElement graded_commutator(const DGAElement& x, const DGAElement& y) const;

    /// "2 * a3 . d(a1) . tau . tau + ..."
    std::string to_string(const DGAElement& x) const;

private:
    void check_letter(const Letter& l) const;

    Unitalization tilde_;
};

/// Operator image of a raw word: a -> rep(a), τ -> T, da -> [F, rep(a)], dτ -> FT + TF.
Matrix pi_word(const FredholmModule& f, const Matrix& T, const Word& w);
Matrix pi_represent(const FredholmModule& f, const Matrix& T, const DGAElement& x);

/**
 * Target DGA for the universal property. A model provides
 *   value_type, one(), zero(), add(x, y), scale(c, x), multiply(x, y), differential(x), distance(x, y).
 */
template <class T>
concept DGATarget = requires(const T& t, const typename T::value_type& x, cplx c) {
    { t.one() } -> std::convertible_to<typename T::value_type>;
    { t.zero() } -> std::convertible_to<typename T::value_type>;
    { t.add(x, x) } -> std::convertible_to<typename T::value_type>;
    { t.scale(c, x) } -> std::convertible_to<typename T::value_type>;
    { t.multiply(x, x) } -> std::convertible_to<typename T::value_type>;
    { t.differential(x) } -> std::convertible_to<typename T::value_type>;
    { t.distance(x, x) } -> std::convertible_to<double>;
};

/// Unital graded map Ã_τ -> target, given on the basis of Ã and on τ.
template <DGATarget Target>
struct GeneratorMap {
    std::vector<typename Target::value_type> basis;
    typename Target::value_type tau;
};

/**
 * Ω(φ)(ω0 dω1 ... dωk) = φ(ω0) dφ(ω1) ... dφ(ωk). Throws InputError when φ is
 * not unital or does not respect dτ = -τ².
 */
template <DGATarget Target>
typename Target::value_type induced_hom(const DGA& dga, const Target& target, const GeneratorMap<Target>& phi,
                                        const DGAElement& x, double tol = kStructuralTol) {
    if (phi.basis.size() != dga.dim()) throw InputError("generator map must give one image per basis element of Ã");
    if (target.distance(phi.basis[dga.unit_index()], target.one()) > tol)
        throw InputError("generator map is not unital");
    const auto dtau = target.differential(phi.tau);
    if (target.distance(target.add(dtau, target.multiply(phi.tau, phi.tau)), target.zero()) > tol)
        throw InputError("generator map does not satisfy d(tau) = -tau^2");
    std::vector<typename Target::value_type> dbasis;
    dbasis.reserve(phi.basis.size());
    for (const auto& b : phi.basis) dbasis.push_back(target.differential(b));

    auto out = target.zero();
    for (const auto& [w, c] : x.terms()) {
        auto term = target.one();
        for (const Letter& l : w) {
            switch (l.kind) {
                case LetterKind::Alg: term = target.multiply(term, phi.basis[l.index]); break;
                case LetterKind::Tau: term = target.multiply(term, phi.tau); break;
                case LetterKind::DAlg: term = target.multiply(term, dbasis[l.index]); break;
                case LetterKind::DTau: term = target.multiply(term, dtau); break;
            }
        }
        out = target.add(out, target.scale(c, term));
    }
    return out;
}

/// Ω_τ as a target of its own universal property.
struct SelfTarget {
    using value_type = DGAElement;
    const DGA* dga;

    DGAElement one() const { return dga->one(); }
    DGAElement zero() const { return {}; }
    DGAElement add(const DGAElement& x, const DGAElement& y) const { return x + y; }
    DGAElement scale(cplx c, const DGAElement& x) const { return x * c; }
    DGAElement multiply(const DGAElement& x, const DGAElement& y) const { return dga->multiply(x, y); }
    DGAElement differential(const DGAElement& x) const { return dga->differential(x); }
    double distance(const DGAElement& x, const DGAElement& y) const { return max_abs_diff(x, y); }
};

/// Z/2-graded operator: even and odd parts.
struct GradedOperator {
    Matrix even;
    Matrix odd;
};

/// Operators on H with differential X -> [F, X] (graded commutator).
struct OperatorTarget {
    using value_type = GradedOperator;
    Matrix F;

    GradedOperator one() const;
    GradedOperator zero() const;
    GradedOperator add(const GradedOperator& x, const GradedOperator& y) const;
    GradedOperator scale(cplx c, const GradedOperator& x) const;
    GradedOperator multiply(const GradedOperator& x, const GradedOperator& y) const;
    GradedOperator differential(const GradedOperator& x) const;
    double distance(const GradedOperator& x, const GradedOperator& y) const;
};

/// φ(a) = rep(a) (even), φ(τ) = T (odd); Ω(φ) then agrees with pi_represent.
GeneratorMap<OperatorTarget> operator_generator_map(const FredholmModule& f, const Matrix& T);

}  // namespace fkhom
