#pragma once

#include <vector>

#include <boost/rational.hpp>

#include "fkhom/cyclic_complex.hpp"
#include "fkhom/fredholm.hpp"

namespace fkhom {

/// c_{m-1}: (-1)^{k+1} k!/(2k)! for m-1 = 2k, -1/(2^{2k-1} (k-1)!) for m-1 = 2k-1.
boost::rational<long long> c_constant(int m);

/// Σ_{s ∈ Σ_{m-1}} sgn(s) b0 ⊗ b_{s(1)} ⊗ ... ⊗ b_{s(m-1)}
Chain antisym_cycle(std::span<const Element> b);

/// Point of C / (2πi)^e Z.
struct LatticeValue {
    cplx representative;
    int modulus_exponent = 1;
};

inline constexpr long long kLatticeSearchRadius = 1000000;

/// (2πi)^e
cplx lattice_generator(int e);
int lattice_exponent(int m);
/// Representative z - k g with k the nearest integer to the projection of z on g.
LatticeValue lattice_reduce(cplx z, int m);
/// |z - w - k g| <= tol for some |k| <= kLatticeSearchRadius.
bool lattice_eq(cplx z, cplx w, int m, double tol);

/**
 * Multiplicative character of [e^{a0}] * ... * [e^{a_{m-1}}] via logarithms b_i
 * with e^{π(b_i)} = e^{π(a_i)}: c_{m-1} ⟨τ_F, antisym_cycle(b)⟩ modulo the lattice.
 * Throws InputError naming the first index whose exponentials differ by more than 1e-9.
 */
LatticeValue mult_char_exponentials(const FredholmModule& f, std::span<const Element> a, std::span<const Element> b);

/// ⟨τ_F, x⟩ for a chain of degree m - 1.
cplx chern_pairing(const FredholmModule& f, const Chain& x);

}  // namespace fkhom
