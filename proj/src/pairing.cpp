#include "fkhom/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace fkhom {

namespace {

long long factorial(int n) {
    long long r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

int permutation_sign(const std::vector<std::size_t>& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

boost::rational<long long> c_constant(int m) {
    if (m < 1) throw InputError("c_constant needs m >= 1");
    const int n = m - 1;
    if (n % 2 == 0) {
        const int k = n / 2;
        const long long sign = k % 2 == 0 ? -1 : 1;
        return {sign * factorial(k), factorial(2 * k)};
    }
    const int k = (n + 1) / 2;
    return {-1, (1LL << (2 * k - 1)) * factorial(k - 1)};
}

Chain antisym_cycle(std::span<const Element> b) {
    if (b.empty()) throw InputError("antisym_cycle needs at least one element");
    const std::size_t d = b.front().size();
    for (const auto& x : b)
        if (x.size() != d) throw InputError("antisym_cycle: elements of different dimensions");
    Chain out(d, static_cast<int>(b.size()) - 1);
    std::vector<std::size_t> perm(b.size() - 1);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<Element> factors(b.size());
    factors[0] = b[0];
    do {
        for (std::size_t r = 0; r < perm.size(); ++r) factors[r + 1] = b[perm[r]];
        Chain term = Chain::simple(factors);
        const double sign = permutation_sign(perm);
        for (std::size_t i = 0; i < out.values().size(); ++i) out.values()[i] += sign * term.values()[i];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

cplx lattice_generator(int e) { return std::pow(cplx(0.0, 2.0 * std::numbers::pi), e); }

int lattice_exponent(int m) {
    if (m < 1) throw InputError("lattice exponent needs m >= 1");
    return (m + 1) / 2;
}

LatticeValue lattice_reduce(cplx z, int m) {
    const int e = lattice_exponent(m);
    const cplx g = lattice_generator(e);
    const double k = std::round((z * std::conj(g)).real() / std::norm(g));
    return {z - k * g, e};
}

bool lattice_eq(cplx z, cplx w, int m, double tol) {
    const cplx g = lattice_generator(lattice_exponent(m));
    const cplx diff = z - w;
    const double k = std::round((diff * std::conj(g)).real() / std::norm(g));
    if (std::abs(k) > static_cast<double>(kLatticeSearchRadius)) return false;
    return std::abs(diff - k * g) <= tol;
}

LatticeValue mult_char_exponentials(const FredholmModule& f, std::span<const Element> a, std::span<const Element> b) {
    const int m = f.m();
    if (a.size() != static_cast<std::size_t>(m) || b.size() != static_cast<std::size_t>(m))
        throw InputError("multiplicative character needs m = " + std::to_string(m) + " exponents and logarithms");
    const std::size_t d = f.unital_algebra().dim();
    std::vector<Element> logs;
    for (std::size_t i = 0; i < b.size(); ++i) {
        auto lift = [&](const Element& x) {
            if (x.size() == d) return x;
            if (x.size() == d - 1) return f.unitalization().embed(x);
            throw InputError("element " + std::to_string(i) + " has the wrong dimension");
        };
        const Element ai = lift(a[i]), bi = lift(b[i]);
        const Matrix ea = f.represent(ai).exp();
        const Matrix eb = f.represent(bi).exp();
        const double v = max_abs(ea - eb);
        if (v > 1e-9)
            throw InputError("logarithm " + std::to_string(i) + " does not match its exponential (deviation " +
                             std::to_string(v) + ")");
        logs.push_back(bi);
    }
    const auto c = c_constant(m);
    const double cd = static_cast<double>(c.numerator()) / static_cast<double>(c.denominator());
    return lattice_reduce(cd * chern_pairing(f, antisym_cycle(logs)), m);
}

cplx chern_pairing(const FredholmModule& f, const Chain& x) { return index_pairing(f, x); }

}  // namespace fkhom
