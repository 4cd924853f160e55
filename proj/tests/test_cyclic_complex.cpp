#include "doctest.h"

#include <random>

#include "fkhom/cyclic_complex.hpp"
#include "fkhom/fredholm.hpp"
#include "fkhom/models.hpp"
#include "oracles.hpp"

using namespace fkhom;

TEST_CASE("trace on M2 is a Hochschild cocycle") {
    const Algebra m2 = algebras::matrix_units(2);
    Cochain tr(4, 0);
    tr.values()[0] = 1.0;  // E11
    tr.values()[3] = 1.0;  // E22
    CHECK(hochschild_b(m2, tr).max_abs() == 0.0);
}

TEST_CASE("b of the (1,1) entry functional") {
    const Algebra m2 = algebras::matrix_units(2);
    Cochain phi(4, 0);
    phi.values()[0] = 1.0;
    const Cochain bphi = hochschild_b(m2, phi);
    const std::vector<std::size_t> t{1, 2};
    // φ(E12 E21) - φ(E21 E12) = 1 - 0
    CHECK(bphi.values().at(t) == cplx(1.0));
}

TEST_CASE("b and B agree with the elementwise oracle") {
    std::mt19937_64 rng(17);
    const Unitalization u = unitalize(algebras::upper_triangular2());
    const Algebra& A = u.algebra;
    for (int m = 0; m <= 3; ++m) {
        const Cochain phi = oracle::random_cochain(A.dim(), m, rng);
        const Cochain bphi = hochschild_b(A, phi);
        const Cochain Bphi = connes_B(A, phi);
        for (int t = 0; t < 5; ++t) {
            std::vector<Element> a;
            for (int i = 0; i <= m + 1; ++i) a.push_back(oracle::random_element(A.dim(), rng));
            CHECK(std::abs(bphi.evaluate(a) - oracle::b_at(A, phi, a)) < 1e-10);
            if (m > 0) {
                const std::vector<Element> args(a.begin(), a.begin() + m);
                CHECK(std::abs(Bphi.evaluate(args) - oracle::B_at(A, phi, args)) < 1e-10);
            }
        }
    }
}

TEST_CASE("complex identities on random cochains") {
    std::mt19937_64 rng(23);
    const Unitalization u = unitalize(algebras::matrix_units(2));
    const Algebra& A = u.algebra;
    for (int m = 0; m <= 3; ++m) {
        const Cochain phi = oracle::random_cochain(A.dim(), m, rng);
        CHECK(hochschild_b(A, hochschild_b(A, phi)).max_abs() < 1e-10);
        CHECK(connes_B(A, connes_B(A, phi)).max_abs() < 1e-10);
        if (m == 0) continue;
        const Tensor anti = hochschild_b(A, connes_B(A, phi)).values() + connes_B(A, hochschild_b(A, phi)).values();
        CHECK(anti.max_abs() < 1e-10);
    }
}

TEST_CASE("total coboundary squares to zero and commutes with S") {
    std::mt19937_64 rng(29);
    const Unitalization u = unitalize(algebras::pointwise(2));
    for (int top = 1; top <= 4; ++top) {
        const TotalCochain psi = oracle::random_total(u.algebra.dim(), top, rng);
        CHECK(total_coboundary(u.algebra, total_coboundary(u.algebra, psi)).max_abs() < 1e-10);
        const TotalCochain lhs = total_coboundary(u.algebra, periodicity_S(psi));
        const TotalCochain rhs = periodicity_S(total_coboundary(u.algebra, psi));
        REQUIRE(lhs.components().size() == rhs.components().size());
        for (std::size_t i = 0; i < lhs.components().size(); ++i)
            CHECK(compare(lhs.component(i).values(), rhs.component(i).values()).max_residual < 1e-12);
    }
}

TEST_CASE("periodicity shifts by two") {
    std::mt19937_64 rng(31);
    const Cochain tau = oracle::random_cochain(3, 1, rng);
    const TotalCochain s = periodicity_S(TotalCochain(1, {tau}));
    CHECK(s.top_degree() == 3);
    REQUIRE(s.components().size() == 2);
    CHECK(s.component(0).degree() == 3);
    CHECK(s.component(0).max_abs() == 0.0);
    CHECK(compare(s.component(1).values(), tau.values()).max_residual == 0.0);
    CHECK(periodicity_S(TotalCochain(2, 3)).max_abs() == 0.0);
}

TEST_CASE("index cocycle is a (b,B) cocycle and B kills it") {
    const FredholmModule f = models::random_reflection_module(4, algebras::upper_triangular2(), 2);
    const Cochain tau = index_cocycle(f);
    CHECK(connes_B(f.unital_algebra(), tau).max_abs() < 1e-12);
    const TotalCochain d = total_coboundary(f.unital_algebra(), TotalCochain(1, {tau}));
    CHECK(d.max_abs() < 1e-10);
    // S of a cocycle is a cocycle
    CHECK(total_coboundary(f.unital_algebra(), periodicity_S(TotalCochain(1, {tau}))).max_abs() < 1e-10);
}

TEST_CASE("restriction to scalars") {
    const Unitalization u = unitalize(algebras::pointwise(2));
    CHECK(is_reduced(u.algebra, TotalCochain(2, u.algebra.dim())));
    Cochain c(3, 0);
    c.values()[2] = 1.0;
    CHECK_FALSE(is_reduced(u.algebra, TotalCochain(0, {c})));
    c.values()[2] = 0.0;
    c.values()[0] = 5.0;
    CHECK(is_reduced(u.algebra, TotalCochain(0, {c})));
}

TEST_CASE("pairing and the dual boundary") {
    std::mt19937_64 rng(37);
    const Unitalization u = unitalize(algebras::matrix_units(2));
    const Algebra& A = u.algebra;
    // delta tensor against its own basis chain
    Cochain delta(A.dim(), 2);
    const std::vector<std::size_t> t{1, 4, 2};
    delta.values().at(t) = 1.0;
    CHECK(pair_cochain_chain(delta, Chain::simple(oracle::basis_args(A.dim(), t))) == cplx(1.0));

    for (int m = 0; m <= 2; ++m) {
        const Cochain phi = oracle::random_cochain(A.dim(), m, rng);
        const Chain x = oracle::random_chain(A.dim(), m + 1, rng);
        const cplx lhs = pair_cochain_chain(hochschild_b(A, phi), x);
        const cplx rhs = pair_cochain_chain(phi, oracle::dual_b(A, x));
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(lhs)));
    }

    // top component of S(Φ) pairs to zero with any pure chain
    const TotalCochain s = periodicity_S(TotalCochain(1, {oracle::random_cochain(A.dim(), 1, rng)}));
    CHECK(pair_cochain_chain(s.component(0), oracle::random_chain(A.dim(), 3, rng)) == cplx(0.0));
}

TEST_CASE("compare reports the worst tuple") {
    Tensor a(3, 2), b(3, 2);
    const std::vector<std::size_t> t{2, 1};
    b.at(t) = cplx(0.0, 2.0);
    const TensorDiff d = compare(a, b);
    CHECK(d.max_residual == doctest::Approx(2.0));
    CHECK(d.worst_tuple == std::vector<std::size_t>{2, 1});
}
