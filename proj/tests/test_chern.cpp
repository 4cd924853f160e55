#include "doctest.h"

#include <random>

#include "fkhom/chern.hpp"
#include "fkhom/models.hpp"
#include "oracles.hpp"

using namespace fkhom;

namespace {

PerturbationChain toy_chain(int m, std::uint64_t seed, double eps = 0.3) {
    FredholmModule f = m % 2 == 1 ? models::toy_even_module(2, seed, m)
                                  : models::random_reflection_module(3, algebras::pointwise(2), seed, m);
    Matrix T = models::conjugation_perturbation(f, seed + 1000, eps);
    return PerturbationChain(std::move(f), std::move(T));
}

DGAElement random_dga(const DGA& dga, std::mt19937_64& rng, int degree) {
    std::normal_distribution<double> g;
    DGAElement out;
    for (int made = 0; made < 2;) {
        const DGAElement x = dga.word(oracle::random_raw_word(dga.dim(), 4, rng), cplx(g(rng), g(rng)));
        if (x.is_zero() || x.degree() != degree) continue;
        out = out + x;
        ++made;
    }
    return out;
}

/// Homogeneous chain element of total degree `degree` with random polynomial coefficients.
ChainElement random_chain(const PerturbationChain& c, std::mt19937_64& rng, int degree) {
    ChainElement out;
    std::uniform_int_distribution<int> pw(0, 2);
    for (int f = 0; f <= 1 && f <= degree; ++f) out.add(f, pw(rng), random_dga(c.dga(), rng, degree - f));
    return out;
}

int degree_of(const ChainElement& x) {
    for (const auto& [key, w] : x.terms()) return key.first + w.degree();
    return -1;
}

}  // namespace

TEST_CASE("interval forms") {
    using R = Rational;
    const IntervalForm t = IntervalForm::monomial(0, 1), dt = IntervalForm::monomial(1, 0);
    const IntervalForm t2dt = t * t * dt;
    CHECK(t2dt.integral() == R(1, 3));
    CHECK((dt * dt) == IntervalForm{});
    CHECK((t * t).d() == IntervalForm::monomial(1, 1, R(2)));
    CHECK((t + t).p_at(R(1, 2)) == R(1));
    CHECK(IntervalForm::monomial(1, 4, R(5)).integral() == R(1));
}

TEST_CASE("compositions are lexicographic") {
    const auto c = compositions(2, 3);
    REQUIRE(c.size() == 6);
    CHECK(c.front() == std::vector<int>{0, 0, 2});
    CHECK(c[1] == std::vector<int>{0, 1, 1});
    CHECK(c.back() == std::vector<int>{2, 0, 0});
    CHECK(compositions(0, 1).size() == 1);
}

TEST_CASE("connection and curvature") {
    const PerturbationChain c = toy_chain(3, 1);
    const DGA& dga = c.dga();
    const DGAElement tau = dga.tau(), tau2 = dga.multiply(tau, tau);

    ChainElement theta(1, 0, tau);
    theta.add(0, 2, tau2);
    theta.add(0, 1, tau2 * -1.0);
    CHECK(max_abs_diff(c.curvature(), theta) == 0.0);

    // ∇ρ(a) = 1 ⊗ da + t ⊗ (τa - aτ)
    for (std::size_t i = 0; i < dga.dim(); ++i) {
        ChainElement expect(0, 0, dga.d_alg(i));
        expect.add(0, 1, dga.multiply(tau, dga.alg(i)) - dga.multiply(dga.alg(i), tau));
        CHECK(max_abs_diff(c.connection_apply(c.rho(Element::basis(dga.dim(), i))), expect) < 1e-14);
    }
    CHECK(max_abs_diff(c.connection_apply(c.rho(c.module().unitalization().unit())), ChainElement{}) == 0.0);

    // Bianchi: ∇θ = 0
    CHECK(max_abs_diff(c.connection_apply(c.curvature()), ChainElement{}) < 1e-14);
    // θ² has no dt∧dt part and equals θ·θ
    const ChainElement t2 = c.curvature_power(2);
    for (const auto& [key, w] : t2.terms()) CHECK(key.first <= 1);
    CHECK(max_abs_diff(t2, c.multiply(c.curvature(), c.curvature())) < 1e-14);
    CHECK_THROWS_AS(c.curvature_power(4), BudgetError);
}

TEST_CASE("connection is a graded derivation compatible with restriction") {
    const PerturbationChain c = toy_chain(3, 2);
    std::mt19937_64 rng(81);
    for (int t = 0; t < 15; ++t) {
        const int p = t % 3, q = (t / 3) % 2;
        const ChainElement x = random_chain(c, rng, p), y = random_chain(c, rng, q);
        const ChainElement lhs = c.connection_apply(c.multiply(x, y));
        const ChainElement rhs =
            c.multiply(c.connection_apply(x), y) + c.multiply(x, c.connection_apply(y)) * (p % 2 == 0 ? 1.0 : -1.0);
        CHECK(max_abs_diff(lhs, rhs) < 1e-10);
        // ∇² = [θ, ·]
        const ChainElement nn = c.connection_apply(c.connection_apply(x));
        const ChainElement th = c.multiply(c.curvature(), x) - c.multiply(x, c.curvature());
        CHECK(max_abs_diff(nn, th) < 1e-10);
        for (int side : {0, 1}) {
            const DGAElement a = c.restrict_to(c.connection_apply(x), side);
            const DGAElement b = c.boundary_connection(c.restrict_to(x, side), side);
            CHECK(max_abs_diff(a, b) < 1e-10);
        }
    }
}

TEST_CASE("graded trace") {
    const PerturbationChain c = toy_chain(3, 3);
    const FredholmModule& f = c.module();
    std::mt19937_64 rng(83);
    const DGA& dga = c.dga();

    // 0-forms are invisible
    CHECK(c.graded_trace(ChainElement(0, 1, random_dga(dga, rng, 3))) == cplx(0.0));
    CHECK_THROWS_AS(c.graded_trace(ChainElement(1, 0, random_dga(dga, rng, 1))), InputError);

    // ∫ dt ⊗ ω = ½ Tr(γ F [F, π(ω)]_graded)
    for (int t = 0; t < 5; ++t) {
        const DGAElement w = random_dga(dga, rng, 2);
        const Matrix pw = pi_represent(f, c.T(), w);
        const cplx expect = 0.5 * (f.gamma() * f.F() * (f.F() * pw - pw * f.F())).trace();
        CHECK(std::abs(c.graded_trace(ChainElement(1, 0, w)) - expect) < 1e-10 * (1.0 + std::abs(expect)));
        // ∫ t² dt ⊗ ω carries the factor 1/3
        CHECK(std::abs(c.graded_trace(ChainElement(1, 2, w)) - expect / 3.0) < 1e-10 * (1.0 + std::abs(expect)));
    }

    // closedness: ∫∇ω = 0 when ω vanishes at both ends
    for (int t = 0; t < 10; ++t) {
        ChainElement w(0, 1, random_dga(dga, rng, 2));
        const DGAElement top = w.terms().begin()->second;
        w.add(0, 2, top * -1.0);
        w.add(1, t % 3, random_dga(dga, rng, 1));
        CHECK(c.restrict_to(w, 0).is_zero());
        CHECK(c.restrict_to(w, 1).is_zero());
        CHECK(std::abs(c.graded_trace(c.connection_apply(w))) < 1e-10);
    }

    // graded commutators have zero trace
    for (int t = 0; t < 10; ++t) {
        const int p = 1 + t % 2;
        const ChainElement x = random_chain(c, rng, p), y = random_chain(c, rng, 3 - p);
        const double sign = (p * (3 - p)) % 2 == 0 ? 1.0 : -1.0;
        const cplx v = c.graded_trace(c.multiply(x, y) - c.multiply(y, x) * sign);
        CHECK(std::abs(v) < 1e-10);
    }
}

TEST_CASE("represented chain agrees with the symbolic chain") {
    for (int m : {2, 3}) {
        const PerturbationChain c = toy_chain(m, 4);
        std::mt19937_64 rng(85);
        const std::size_t d = c.dga().dim();
        for (int t = 0; t < 6; ++t) {
            const ChainElement x = random_chain(c, rng, t % 3);
            const RepChain rx = c.represent(x);
            const RepChain rn = c.rep_connection(rx);
            const RepChain sn = c.represent(c.connection_apply(x));
            for (const auto& [key, mat] : sn.terms()) {
                const auto it = rn.terms().find(key);
                const double got = it == rn.terms().end() ? max_abs(mat) : max_abs(it->second - mat);
                CHECK(got < 1e-10);
            }
        }
        for (int k = 1; 2 * k <= m; ++k) {
            const auto deg = static_cast<std::size_t>(m - 2 * k + 1);
            for (int t = 0; t < 4; ++t) {
                std::vector<std::size_t> idx;
                std::vector<Element> els;
                for (std::size_t r = 0; r < deg; ++r) {
                    idx.push_back(rng() % d);
                    els.push_back(Element::basis(d, idx.back()));
                }
                const cplx a = chern_component(c, k, idx), b = chern_component_symbolic(c, k, els);
                CHECK(std::abs(a - b) < 1e-10 * (1.0 + std::abs(a)));
            }
        }
    }
}

TEST_CASE("top component vanishes") {
    for (int m : {1, 2, 3}) {
        const PerturbationChain c = toy_chain(m, 5);
        CHECK(chern_cochain(c, 0).max_abs() == 0.0);
    }
}

TEST_CASE("boundary cycles reproduce the index cocycles") {
    for (int m : {1, 2, 3, 4}) {
        const PerturbationChain c = toy_chain(m, 6);
        double fact = 1.0;
        for (int i = 2; i < m; ++i) fact *= i;
        const Tensor tf = boundary_cycle_chern(c, BoundarySide::F).values() * fact;
        const Tensor tg = boundary_cycle_chern(c, BoundarySide::G).values() * fact;
        CHECK(compare(tf, index_cocycle(c.module()).values()).max_residual < 1e-9);
        CHECK(compare(tg, index_cocycle(c.perturbed()).values()).max_residual < 1e-9);
    }
}

TEST_CASE("witness identity") {
    for (int m : {1, 2, 3, 4}) {
        const PerturbationChain c = toy_chain(m, 7);
        const TotalCochain psi = witness_cochain(c);
        CHECK(psi.top_degree() == m - 2);
        const WitnessCheck w = check_witness(c, psi);
        CHECK(w.pass);
        CHECK(w.reduced);
        CHECK(w.max_residual < 1e-8);
        CHECK(verify_cobordism_identity(c).pass);
    }
}

TEST_CASE("corrupted witness is located") {
    const PerturbationChain c = toy_chain(3, 8);
    TotalCochain psi = witness_cochain(c);
    REQUIRE(psi.max_abs() > 1e-6);
    psi.components().front().values() *= -1.0;
    const WitnessCheck w = check_witness(c, psi);
    CHECK_FALSE(w.pass);
    CHECK(w.worst_degree == 2);
    CHECK(w.worst_tuple.size() == 3);
}

TEST_CASE("zero perturbation gives a zero witness") {
    for (int m : {2, 3}) {
        const PerturbationChain c = toy_chain(m, 9, 0.0);
        const TotalCochain psi = witness_cochain(c);
        CHECK(psi.max_abs() == 0.0);
        const InvarianceReport r = verify_perturbation_invariance(c.module(), c.T());
        CHECK(r.pass);
        CHECK(r.max_residual == 0.0);
        CHECK(verify_cobordism_identity(c).max_residual < 1e-12);
    }
}
