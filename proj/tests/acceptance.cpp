// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fkhom/chern.hpp"
#include "fkhom/dga.hpp"
#include "fkhom/models.hpp"
#include "fkhom/pairing.hpp"
#include "oracles.hpp"

using namespace fkhom;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

double total_max(const TotalCochain& t) { return t.components().empty() ? 0.0 : t.max_abs(); }

/// Module set shared by the cocycle and boundary-cycle criteria.
struct Named {
    std::string name;
    FredholmModule f;
};

std::vector<Named> model_set() {
    std::vector<Named> out;
    out.push_back({"hardy(16) m=2", models::discrete_hardy(16)});
    out.push_back({"toy_even(4) m=1", models::toy_even_module(4, 1, 1)});
    out.push_back({"toy_even(4) m=3", models::toy_even_module(4, 1, 3)});
    out.push_back({"reflection(6, ut2) m=2", models::random_reflection_module(6, algebras::upper_triangular2(), 1, 2)});
    out.push_back({"reflection(6, ut2) m=4", models::random_reflection_module(6, algebras::upper_triangular2(), 1, 4)});
    return out;
}

FredholmModule witness_model(int m, std::uint64_t seed) {
    if (m % 2 == 1) return models::toy_even_module(4, seed, m);
    return models::random_reflection_module(seed % 2 == 0 ? 8 : 6, algebras::upper_triangular2(), seed, m);
}

/// Degenerate module over C^3 (graded when m is odd).
FredholmModule degenerate_module(int m, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Algebra a = algebras::pointwise(3);
    if (m % 2 == 1) {
        const std::size_t n = 3;
        Matrix F = Matrix::Zero(6, 6), g = Matrix::Identity(6, 6);
        F.topRightCorner(3, 3) = Matrix::Identity(3, 3);
        F.bottomLeftCorner(3, 3) = Matrix::Identity(3, 3);
        g.bottomRightCorner(3, 3) *= -1.0;
        std::vector<Matrix> rep;
        for (std::size_t i = 0; i < n; ++i) {
            Matrix p = Matrix::Zero(6, 6);
            p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
            p(static_cast<Eigen::Index>(i + 3), static_cast<Eigen::Index>(i + 3)) = 1.0;
            rep.push_back(p);
        }
        return FredholmModule(a, rep, F, g, m);
    }
    const Matrix W = models::random_unitary(6, rng);
    Matrix S = Matrix::Identity(6, 6);
    for (Eigen::Index i = 0; i < 6; i += 2) S(i, i) = -1.0;
    std::vector<Matrix> rep;
    for (Eigen::Index i = 0; i < 3; ++i) {
        Matrix p = Matrix::Zero(6, 6);
        p(2 * i, 2 * i) = 1.0;
        p(2 * i + 1, 2 * i + 1) = 1.0;
        rep.push_back(W * p * W.adjoint());
    }
    return FredholmModule(a, rep, W * S * W.adjoint(), std::nullopt, m);
}

void criterion1() {
    const auto t0 = Clock::now();
    const std::vector<Unitalization> algs{unitalize(algebras::pointwise(2)), unitalize(algebras::upper_triangular2()),
                                          unitalize(algebras::matrix_units(2)),
                                          unitalize(algebras::truncated_polynomial(4))};
    std::mt19937_64 rng(1001);
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
        const Algebra& A = algs[static_cast<std::size_t>(s) % algs.size()].algebra;
        const int deg = s % 6;
        const Cochain phi = oracle::random_cochain(A.dim(), deg, rng);
        const Cochain b1 = hochschild_b(A, phi), B1 = connes_B(A, phi);
        worst = std::max(worst, hochschild_b(A, b1).max_abs());
        worst = std::max(worst, connes_B(A, B1).max_abs());
        if (deg > 0) worst = std::max(worst, (hochschild_b(A, B1).values() + connes_B(A, b1).values()).max_abs());
        const TotalCochain psi = oracle::random_total(A.dim(), deg, rng);
        worst = std::max(worst, total_max(total_coboundary(A, total_coboundary(A, psi))));
    }
    const double secs = seconds_since(t0);
    report(1, worst <= 1e-10 && secs < 30.0,
           "b^2, B^2, bB+Bb, (b+B)^2 on 100 cochains (dim <= 5, degree <= 5): max residual " + fmt("%.3e", worst) +
               ", " + fmt("%.2f s", secs));
}

void criterion2() {
    const auto t0 = Clock::now();
    double worst = 0.0;
    std::string detail;
    for (const auto& [name, f] : model_set()) {
        TotalCochain t(f.m() - 1, f.unital_algebra().dim());
        t.components().front() = index_cocycle(f);
        const double r = total_max(total_coboundary(f.unital_algebra(), t));
        worst = std::max(worst, r);
        detail += " " + name + fmt(" %.1e;", r);
    }
    const double secs = seconds_since(t0);
    report(2, worst <= 1e-9 && secs < 60.0,
           "(b+B)(tau,0,...) residual" + detail + " max " + fmt("%.3e", worst) + ", " + fmt("%.2f s", secs));
}

void criterion3() {
    double worst = 0.0;
    const auto set = model_set();
    for (std::uint64_t s = 0; s < 50; ++s) {
        const FredholmModule& f = set[s % set.size()].f;
        const double eps = 0.05 + 0.01 * static_cast<double>(s);
        const Matrix T = models::conjugation_perturbation(f, 2000 + s, eps);
        worst = std::max(worst, max_abs(f.F() * T + T * f.F() + T * T));
    }
    report(3, worst <= 1e-12, "FT+TF+T^2 on 50 conjugation perturbations: max residual " + fmt("%.3e", worst));
}

void criterion4() {
    double worst = 0.0;
    std::uint64_t seed = 3000;
    for (const auto& [name, f] : model_set()) {
        const PerturbationChain c(f, models::conjugation_perturbation(f, seed++, 0.3));
        const double fact = factorial(f.m() - 1);
        const Tensor tf = boundary_cycle_chern(c, BoundarySide::F).values() * fact;
        const Tensor tg = boundary_cycle_chern(c, BoundarySide::G).values() * fact;
        worst = std::max(worst, compare(tf, index_cocycle(f).values()).max_residual);
        worst = std::max(worst, compare(tg, index_cocycle(c.perturbed()).values()).max_residual);
    }
    report(4, worst <= 1e-9, "(m-1)! Ch(boundary) vs tau for F and G on the model set: max entry diff " +
                                 fmt("%.3e", worst));
}

void criteria5and6() {
    const auto t0 = Clock::now();
    double worst = 0.0, worst_m1 = 0.0, top = 0.0;
    bool reduced = true;
    std::size_t tuples = 0;
    std::string per_m;
    for (int m = 1; m <= 5; ++m) {
        double wm = 0.0;
        for (std::uint64_t s = 0; s < 20; ++s) {
            const FredholmModule f = witness_model(m, 100 * static_cast<std::uint64_t>(m) + s);
            const double eps = 0.1 + 0.02 * static_cast<double>(s);
            const PerturbationChain c(f, models::conjugation_perturbation(f, 5000 + s, eps));
            const TotalCochain psi = witness_cochain(c);
            const WitnessCheck w = check_witness(c, psi, 1e-8);
            wm = std::max(wm, w.max_residual);
            reduced = reduced && w.reduced && w.reduced_violation == 0.0;
            if (m == 1) {
                const Tensor diff = index_cocycle(c.perturbed()).values() - index_cocycle(f).values();
                worst_m1 = std::max(worst_m1, diff.max_abs());
            }
            const Cochain ch0 = chern_cochain(c, 0);
            top = std::max(top, ch0.max_abs());
            tuples += ch0.values().size();
        }
        worst = std::max(worst, wm);
        per_m += fmt(" m=%.0f:", m) + fmt("%.1e", wm);
    }
    const double secs = seconds_since(t0);
    report(5, worst <= 1e-8 && worst_m1 <= 1e-9 && reduced && secs < 600.0,
           "witness identity, 20 seeds per m," + per_m + "; reduced " + (reduced ? "yes" : "no") +
               "; m=1 |tau_G - tau_F| " + fmt("%.3e", worst_m1) + ", " + fmt("%.1f s", secs));
    report(6, top == 0.0,
           "top Chern component on " + std::to_string(tuples) + " tuples: max |value| " + fmt("%.3e", top));
}

void criterion7() {
    double add = 0.0, neg = 0.0, deg = 0.0, uni = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const int m = s % 2 == 0 ? 2 : 3;
        FredholmModule f = m == 3 ? models::toy_even_module(3, 7000 + s, 3)
                                  : models::random_reflection_module(6, algebras::pointwise(3), 7000 + s, 2);
        FredholmModule g = m == 3 ? models::toy_even_module(4, 7100 + s, 3)
                                  : models::random_reflection_module(9, algebras::pointwise(3), 7100 + s, 2);
        const Cochain tf = index_cocycle(f), tg = index_cocycle(g);
        add = std::max(add, (index_cocycle(direct_sum(f, g)).values() - (tf.values() + tg.values())).max_abs());
        neg = std::max(neg, (index_cocycle(inverse(f)).values() + tf.values()).max_abs());
        const FredholmModule d = degenerate_module(m, 7200 + s);
        deg = std::max(deg, index_cocycle(d).max_abs());
        deg = std::max(deg, (index_cocycle(direct_sum(f, d)).values() - tf.values()).max_abs());
        std::mt19937_64 rng(7300 + s);
        const Matrix u = models::random_unitary(f.hilbert_dim(), rng);
        uni = std::max(uni, (index_cocycle(unitary_conjugate(f, u)).values() - tf.values()).max_abs());
    }
    const double worst = std::max({add, neg, deg, uni});
    report(7, worst <= 1e-10,
           "20 instances: additivity " + fmt("%.1e", add) + ", inverse " + fmt("%.1e", neg) + ", degenerate " +
               fmt("%.1e", deg) + ", unitary " + fmt("%.1e", uni));
}

std::vector<cplx> winding_values(std::size_t N, int w) {
    const Element e = models::winding_symbol(N, w);
    std::vector<cplx> v(N);
    for (std::size_t x = 0; x < N; ++x) v[x] = e[x];
    return v;
}

cplx hardy_pairing(std::size_t N, int w) {
    const FredholmModule h = models::discrete_hardy(N);
    const std::vector<Element> b{models::winding_symbol(N, -w), models::winding_symbol(N, w)};
    return chern_pairing(h, antisym_cycle(b));
}

void criterion8() {
    const auto t0 = Clock::now();
    bool oracle_ok = true;
    for (std::size_t N : {16, 32, 64})
        for (int w = -3; w <= 3; ++w) oracle_ok = oracle_ok && models::hardy_index_oracle(winding_values(N, w)).index == -w;

    const cplx anchor = hardy_pairing(64, 1);
    const int anchor_index = models::hardy_index_oracle(winding_values(64, 1)).index;
    const bool pinned = std::abs(anchor) > 1e-12;
    const double kappa = pinned ? anchor_index / anchor.real() : std::nan("");

    std::printf("  convergence table (constant pinned at N=64, w=1: %s)\n",
                pinned ? fmt("%.9g", kappa).c_str() : "unpinnable, pairing is 0");
    std::printf("  %4s %3s %7s %24s %12s\n", "N", "w", "oracle", "pairing", "scaled");
    double err64 = pinned ? 0.0 : INFINITY, err16 = pinned ? 0.0 : INFINITY;
    for (std::size_t N : {16, 32, 64})
        for (int w = -3; w <= 3; ++w) {
            const int idx = models::hardy_index_oracle(winding_values(N, w)).index;
            const cplx p = hardy_pairing(N, w);
            const double scaled = kappa * p.real();
            std::printf("  %4zu %3d %7d %11.3e%+11.3ei %12.6g\n", N, w, idx, p.real(), p.imag(), scaled);
            if (pinned) {
                const double e = std::abs(scaled - (-w));
                if (N == 64) err64 = std::max(err64, e);
                if (N == 16) err16 = std::max(err16, e);
            }
        }
    const double secs = seconds_since(t0);
    std::string why;
    if (!pinned)
        why = "; the m=2 pairing vanishes on commutative algebras in finite dimensions "
              "(Tr F[F,a][F,b] = 2 Tr F[b,a] = 0), so no constant can be pinned";
    report(8, oracle_ok && pinned && err64 <= 1e-6 && err16 <= 1e-3 && secs < 60.0,
           std::string("index oracle = -w for N in {16,32,64}, |w| <= 3: ") + (oracle_ok ? "yes" : "no") +
               "; scaled m=2 pairing error N=64 " + fmt("%.3e", err64) + ", N=16 " + fmt("%.3e", err16) + ", " +
               fmt("%.2f s", secs) + why);
}

void criterion9() {
    const cplx two_pi_i{0.0, 2.0 * std::numbers::pi};
    bool all = true;
    double worst = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
        std::mt19937_64 rng(9000 + s);
        std::normal_distribution<double> g;
        const int m = s % 2 == 0 ? 1 : 2;
        const FredholmModule f = m == 1 ? models::toy_even_module(3, 9100 + s, 1) : models::discrete_hardy(16);
        const std::size_t k = f.algebra().dim();
        const Unitalization& u = f.unitalization();
        auto random_log = [&] {
            Vector v(static_cast<Eigen::Index>(k));
            for (auto& x : v) x = cplx(0.0, g(rng));
            return u.embed(Element(v));
        };
        Vector chi = Vector::Zero(static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < chi.size(); ++i) chi(i) = (rng() % 2 == 0) ? 1.0 : 0.0;
        chi(static_cast<Eigen::Index>(s % k)) = 1.0;
        const Element shift = u.embed(Element(chi)) * (two_pi_i * static_cast<double>(1 + s % 3));

        std::vector<Element> a;
        for (int i = 0; i < m; ++i) a.push_back(random_log());
        std::vector<Element> b = a;
        b[static_cast<std::size_t>(m - 1)] = b[static_cast<std::size_t>(m - 1)] + shift;
        const LatticeValue v1 = mult_char_exponentials(f, a, a);
        const LatticeValue v2 = mult_char_exponentials(f, a, b);
        all = all && lattice_eq(v1.representative, v2.representative, m, 1e-6);
        worst = std::max(worst, std::abs(lattice_reduce(v1.representative - v2.representative, m).representative));
    }
    report(9, all, "log-branch shifts on 10 cases (m in {1,2}): lattice_eq holds, max reduced difference " +
                       fmt("%.3e", worst));
}

void criterion10() {
    const auto t0 = Clock::now();
    // noncommutative algebra so products of letters rarely collapse
    const FredholmModule f = models::random_reflection_module(6, algebras::upper_triangular2(), 10000, 2);
    const Matrix T = models::conjugation_perturbation(f, 10001, 0.4);
    const DGA dga(f.unitalization());
    const OperatorTarget target{f.F()};
    const GeneratorMap<OperatorTarget> phi = operator_generator_map(f, T);
    double d2 = 0.0, leib = 0.0, conf = 0.0, pim = 0.0, univ = 0.0;
    int nonzero = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
        std::mt19937_64 rng(10100 + s), order(10500 + s);
        const Word wx = oracle::random_raw_word(dga.dim(), 5, rng);
        const Word wy = oracle::random_raw_word(dga.dim(), 4, rng);
        const DGAElement x = dga.word(wx), y = dga.word(wy);
        if (!x.is_zero()) ++nonzero;
        for (int k = 0; k < 10; ++k) conf = std::max(conf, max_abs_diff(dga.normalize({{wx, 1.0}}, &order), x));

        const DGAElement dx = dga.differential(x);
        d2 = std::max(d2, dga.differential(dx).max_abs());
        const double sign = word_degree(wx) % 2 == 0 ? 1.0 : -1.0;
        const DGAElement lhs = dga.differential(dga.multiply(x, y));
        const DGAElement rhs = dga.multiply(dx, y) + dga.multiply(x, dga.differential(y)) * sign;
        leib = std::max(leib, max_abs_diff(lhs, rhs));

        const Matrix pxy = pi_represent(f, T, dga.multiply(x, y));
        const Matrix pxpy = pi_represent(f, T, x) * pi_represent(f, T, y);
        pim = std::max(pim, max_abs(pxy - pxpy));

        const GradedOperator img = induced_hom(dga, target, phi, x);
        univ = std::max(univ, target.distance(induced_hom(dga, target, phi, dx), target.differential(img)));
        univ = std::max(univ, max_abs(img.even + img.odd - pi_represent(f, T, x)));
    }
    const double secs = seconds_since(t0);
    const bool pass = d2 <= 1e-10 && leib <= 1e-10 && conf <= 1e-12 && pim <= 1e-9 && univ <= 1e-10 && secs < 30.0;
    report(10, pass,
           "200 words (" + std::to_string(nonzero) + " with nonzero normal form): d^2 " + fmt("%.1e", d2) + ", Leibniz " + fmt("%.1e", leib) + ", confluence " + fmt("%.1e", conf) +
               ", pi multiplicative " + fmt("%.1e", pim) + ", universal property " + fmt("%.1e", univ) + ", " +
               fmt("%.2f s", secs));
}

}  // namespace

int main() {
    const std::vector<std::function<void()>> steps{criterion1, criterion2, criterion3, criterion4, criteria5and6,
                                                   criterion7, criterion8, criterion9, criterion10};
    for (const auto& step : steps) {
        try {
            step();
        } catch (const std::exception& e) {
            std::printf("FAIL (exception): %s\n", e.what());
            ++failures;
        }
    }
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
