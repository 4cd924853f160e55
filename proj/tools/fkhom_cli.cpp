// fkhom: batch front-end for model construction, verification and pairing reports.
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 input error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fkhom/chern.hpp"
#include "fkhom/io.hpp"
#include "fkhom/models.hpp"
#include "fkhom/pairing.hpp"

using namespace fkhom;
using io::json;

namespace {

struct RunConfig {
    std::string module_path;
    std::string perturbation_path;
    std::string logs_path;
    std::string report_path;
    std::string output_path;
    std::optional<int> m;
    double tol = 1e-10;
    double witness_tol = 1e-8;
    double eps = 0.1;
    std::uint64_t seed = 1;
    std::size_t budget_n = 64;
    bool dump_witness = false;
};

FredholmModule load_module(const RunConfig& cfg) {
    if (cfg.module_path.empty()) throw InputError("--module is required");
    FredholmModule f = io::module_from_json(io::read_json_file(cfg.module_path));
    if (f.hilbert_dim() > cfg.budget_n)
        throw BudgetError("Hilbert space dimension " + std::to_string(f.hilbert_dim()) + " exceeds --budget-n " +
                          std::to_string(cfg.budget_n));
    if (f.m() > kMaxDegree) throw BudgetError("m = " + std::to_string(f.m()) + " exceeds the degree limit");
    if (cfg.m && *cfg.m != f.m()) f = f.relax_summability(*cfg.m);
    return f;
}

Matrix load_perturbation(const RunConfig& cfg, const FredholmModule& f) {
    if (!cfg.perturbation_path.empty()) return io::perturbation_from_json(io::read_json_file(cfg.perturbation_path));
    return models::conjugation_perturbation(f, cfg.seed, cfg.eps);
}

json tuple_json(const std::vector<std::size_t>& t) { return json(t); }

void emit(const RunConfig& cfg, const json& report) {
    if (!cfg.report_path.empty()) io::write_json_file(cfg.report_path, report);
    std::cout << report.dump(2) << "\n";
}

std::string form_prefix(int f, int j) {
    std::string t = j == 0 ? "" : (j == 1 ? "t" : "t^" + std::to_string(j));
    if (f == 1) t = t.empty() ? "dt" : t + " dt";
    return t.empty() ? "1" : t;
}

std::string chain_to_string(const PerturbationChain& c, const ChainElement& x) {
    std::string out;
    for (const auto& [key, w] : x.terms()) {
        if (!out.empty()) out += " + ";
        out += form_prefix(key.first, key.second) + " (x) [" + c.dga().to_string(w) + "]";
    }
    return out.empty() ? "0" : out;
}

json witness_dump(const PerturbationChain& c, const TotalCochain& psi) {
    json trace = json::array();
    trace.push_back("theta = " + chain_to_string(c, c.curvature()));
    const std::size_t d = c.module().unital_algebra().dim();
    for (std::size_t i = 0; i < d; ++i) {
        const Element e = Element::basis(d, i);
        trace.push_back("nabla rho(a" + std::to_string(i) + ") = " + chain_to_string(c, c.connection_apply(c.rho(e))));
    }
    return {{"psi", io::total_cochain_to_json(psi)}, {"trace", std::move(trace)}};
}

struct Suite {
    json checks = json::array();
    bool pass = true;
    double max_residual = 0.0;
    json worst_tuple = json::array();
    std::string failure;

    void add(const std::string& name, double residual, double tol, const json& tuple = json::array(),
             const std::string& detail = {}) {
        const bool ok = residual <= tol;
        json c = {{"name", name}, {"pass", ok}, {"residual", residual}};
        if (!tuple.empty()) c["worst_tuple"] = tuple;
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(std::move(c));
        if (residual > max_residual) {
            max_residual = residual;
            worst_tuple = tuple;
        }
        if (!ok && pass) failure = name;
        pass = pass && ok;
    }

    json report() const {
        json r = {{"pass", pass}, {"max_residual", max_residual}, {"worst_tuple", worst_tuple}, {"checks", checks}};
        if (!pass) r["failure"] = failure;
        return r;
    }
};

bool fits(std::size_t dim, std::size_t rank) {
    try {
        check_budget(dim, rank);
        return true;
    } catch (const BudgetError&) {
        return false;
    }
}

Cochain random_cochain(std::size_t d, int degree, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Cochain c(d, degree);
    for (auto& v : c.values().data()) v = cplx(g(rng), g(rng));
    return c;
}

void complex_identities(const Algebra& A, Suite& s, std::uint64_t seed, double tol) {
    std::mt19937_64 rng(seed);
    double bb = 0.0, BB = 0.0, bB = 0.0;
    for (int deg = 0; deg <= 4 && fits(A.dim(), static_cast<std::size_t>(deg) + 3); ++deg) {
        const Cochain phi = random_cochain(A.dim(), deg, rng);
        const Cochain b1 = hochschild_b(A, phi);
        bb = std::max(bb, hochschild_b(A, b1).max_abs());
        const Cochain B1 = connes_B(A, phi);
        BB = std::max(BB, connes_B(A, B1).max_abs());
        if (deg > 0) bB = std::max(bB, (hochschild_b(A, B1).values() + connes_B(A, b1).values()).max_abs());
    }
    s.add("b^2=0", bb, tol);
    s.add("B^2=0", BB, tol);
    s.add("bB+Bb=0", bB, tol);
}

int cmd_verify(const RunConfig& cfg) {
    const FredholmModule f = load_module(cfg);
    Suite s;
    const AlgebraReport ar = validate_algebra(f.unital_algebra());
    s.add("algebra associativity", ar.associativity_violation, cfg.tol);
    s.add("algebra unit", ar.unit_violation, cfg.tol);
    const ValidationReport vr = validate_module(f, cfg.tol);
    for (const auto& c : vr.checks) s.add(c.name, c.pass ? c.violation : std::max(c.violation, 1.0), cfg.tol, {}, c.detail);
    if (!s.pass) {
        emit(cfg, s.report());
        return 1;
    }
    complex_identities(f.unital_algebra(), s, cfg.seed, cfg.tol);

    const Algebra& A = f.unital_algebra();
    const Cochain tau = index_cocycle(f);
    TotalCochain t(f.m() - 1, A.dim());
    t.components().front() = tau;
    const TotalCochain dt = total_coboundary(A, t);
    double cocycle = 0.0;
    for (const auto& c : dt.components()) cocycle = std::max(cocycle, c.max_abs());
    s.add("(b+B)tau=0", cocycle, cfg.tol);

    const Matrix T = load_perturbation(cfg, f);
    const PerturbationChain chain(f, T, cfg.tol);
    s.add("FT+TF+T^2=0", max_abs(f.F() * T + T * f.F() + T * T), cfg.tol);

    double fact = 1.0;
    for (int i = 2; i < f.m(); ++i) fact *= i;
    const Cochain tg = index_cocycle(chain.perturbed());
    const auto lf = compare(boundary_cycle_chern(chain, BoundarySide::F).values() * cplx(fact), tau.values());
    const auto lg = compare(boundary_cycle_chern(chain, BoundarySide::G).values() * cplx(fact), tg.values());
    s.add("(m-1)! Ch(boundary F) = tau_F", lf.max_residual, cfg.tol, tuple_json(lf.worst_tuple));
    s.add("(m-1)! Ch(boundary G) = tau_G", lg.max_residual, cfg.tol, tuple_json(lg.worst_tuple));

    if (fits(A.dim(), static_cast<std::size_t>(f.m()) + 1))
        s.add("top component vanishes", chern_cochain(chain, 0).max_abs(), 0.0);

    const TotalCochain psi = witness_cochain(chain);
    const WitnessCheck w = check_witness(chain, psi, cfg.witness_tol);
    s.add("witness (b+B)psi = (tau_G - tau_F)/(m-1)!", w.max_residual, cfg.witness_tol, tuple_json(w.worst_tuple));
    s.add("witness reduced", w.reduced_violation, 0.0);

    if (fits(A.dim(), static_cast<std::size_t>(f.m()) + 2)) {
        const WitnessCheck cob = verify_cobordism_identity(chain, cfg.witness_tol);
        s.add("(b+B)Ch(chain) = S Ch(boundary)", cob.max_residual, cfg.witness_tol, tuple_json(cob.worst_tuple));
    }
    json r = s.report();
    if (cfg.dump_witness) r["witness_dump"] = witness_dump(chain, psi);
    emit(cfg, r);
    return s.pass ? 0 : 1;
}

int cmd_verify_invariance(const RunConfig& cfg, bool always_dump) {
    const FredholmModule f = load_module(cfg);
    const ValidationReport vr = validate_module(f, cfg.tol);
    if (!vr.pass()) {
        json r = {{"pass", false}, {"max_residual", vr.first_failure()->violation}, {"worst_tuple", json::array()},
                  {"failure", vr.first_failure()->name}};
        emit(cfg, r);
        return 1;
    }
    const Matrix T = load_perturbation(cfg, f);
    const InvarianceReport rep = verify_perturbation_invariance(f, T, cfg.witness_tol);
    json r = {{"pass", rep.pass},
              {"max_residual", rep.max_residual},
              {"worst_tuple", rep.worst_tuple},
              {"worst_degree", rep.worst_degree},
              {"reduced", rep.reduced},
              {"involution_residual", rep.involution_residual},
              {"perturbation_schatten_norm", rep.perturbation_norm},
              {"tau_difference", rep.tau_difference},
              {"commutator_norms_F", rep.schatten_f.commutator_norms},
              {"commutator_norms_G", rep.schatten_g.commutator_norms}};
    json residuals = json::array();
    if (!rep.witness.components().empty()) {
        const TotalCochain lhs = total_coboundary(f.unital_algebra(), rep.witness);
        for (const auto& c : lhs.components()) residuals.push_back({{"degree", c.degree()}, {"max_abs", c.max_abs()}});
    }
    r["coboundary_components"] = residuals;
    if (cfg.dump_witness || always_dump) r["witness_dump"] = witness_dump(PerturbationChain(f, T), rep.witness);
    emit(cfg, r);
    return rep.pass ? 0 : 1;
}

int cmd_pair(const RunConfig& cfg) {
    const FredholmModule f = load_module(cfg);
    if (cfg.logs_path.empty()) throw InputError("--logs is required");
    const auto logs = io::logs_from_json(io::read_json_file(cfg.logs_path));
    auto evaluate = [&](const FredholmModule& mod) {
        const LatticeValue v = mult_char_exponentials(mod, logs.a, logs.b);
        std::vector<Element> b;
        for (const auto& x : logs.b) b.push_back(x.size() == mod.unital_algebra().dim() ? x : mod.unitalization().embed(x));
        const cplx raw = chern_pairing(mod, antisym_cycle(b));
        return json{{"representative", io::complex_to_json(v.representative)},
                    {"modulus_exponent", v.modulus_exponent},
                    {"raw_pairing", io::complex_to_json(raw)}};
    };
    json r = evaluate(f);
    if (!cfg.perturbation_path.empty()) {
        const Matrix T = io::perturbation_from_json(io::read_json_file(cfg.perturbation_path));
        r["perturbed"] = evaluate(perturb(f, T, cfg.tol).perturbed);
    }
    emit(cfg, r);
    return 0;
}

int cmd_hardy_table(const RunConfig& cfg, const std::vector<std::size_t>& grids, const std::vector<int>& windings,
                    std::size_t anchor) {
    // constant pinned at the anchor grid from w = 1
    auto pairing = [](std::size_t N, int w) {
        const FredholmModule h = models::discrete_hardy(N);
        const std::vector<Element> b{models::winding_symbol(N, -w), models::winding_symbol(N, w)};
        return chern_pairing(h, antisym_cycle(b));
    };
    auto symbol = [](std::size_t N, int w) {
        const Element e = models::winding_symbol(N, w);
        std::vector<cplx> v(N);
        for (std::size_t x = 0; x < N; ++x) v[x] = e[x];
        return v;
    };
    const cplx anchor_value = pairing(anchor, 1);
    const int anchor_index = models::hardy_index_oracle(symbol(anchor, 1)).index;
    const double kappa = std::abs(anchor_value) > 1e-12 ? anchor_index / anchor_value.real()
                                                        : std::numeric_limits<double>::quiet_NaN();
    std::ostringstream csv;
    csv << "N,w,oracle_index,pairing_re,pairing_im,scaled\n";
    json rows = json::array();
    for (std::size_t N : grids)
        for (int w : windings) {
            const int idx = models::hardy_index_oracle(symbol(N, w)).index;
            const cplx p = pairing(N, w);
            csv << N << "," << w << "," << idx << "," << p.real() << "," << p.imag() << "," << kappa * p.real() << "\n";
            rows.push_back({{"N", N}, {"w", w}, {"oracle_index", idx}, {"pairing", io::complex_to_json(p)},
                            {"scaled", std::isnan(kappa) ? json(nullptr) : json(kappa * p.real())}});
        }
    if (!cfg.output_path.empty()) {
        std::ofstream out(cfg.output_path);
        if (!out) throw InputError("cannot write " + cfg.output_path);
        out << csv.str();
    }
    json r = {{"anchor_N", anchor},
              {"constant", std::isnan(kappa) ? json(nullptr) : json(kappa)},
              {"anchor_pairing", io::complex_to_json(anchor_value)},
              {"rows", rows}};
    if (!cfg.report_path.empty()) io::write_json_file(cfg.report_path, r);
    std::cout << csv.str();
    return 0;
}

Algebra algebra_by_name(const std::string& spec) {
    if (spec == "ut2") return algebras::upper_triangular2();
    if (spec.rfind("pointwise", 0) == 0) return algebras::pointwise(std::stoul(spec.substr(9)));
    if (spec.rfind("matrix", 0) == 0) return algebras::matrix_units(std::stoul(spec.substr(6)));
    return io::algebra_from_json(io::read_json_file(spec));
}

void write_or_print(const std::string& path, const json& j) {
    if (path.empty())
        std::cout << j.dump(2) << "\n";
    else
        io::write_json_file(path, j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fkhom: Fredholm modules, cyclic cocycles and perturbation witnesses"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sc) {
        sc->add_option("--module", cfg.module_path, "Module JSON");
        sc->add_option("--perturbation", cfg.perturbation_path, "Perturbation JSON {\"T\": matrix}");
        sc->add_option("--m", cfg.m, "Summability degree (m + 2k relaxes the module)");
        sc->add_option("--tol", cfg.tol, "Identity tolerance")->capture_default_str();
        sc->add_option("--seed", cfg.seed, "Seed for random inputs")->capture_default_str();
        sc->add_option("--eps", cfg.eps, "Strength of the generated perturbation when none is given")
            ->capture_default_str();
        sc->add_option("--report", cfg.report_path, "Write the JSON report here");
        sc->add_option("--budget-n", cfg.budget_n, "Largest accepted Hilbert space dimension")->capture_default_str();
        sc->add_flag("--dump-witness", cfg.dump_witness, "Include the witness and a symbolic trace in the report");
    };

    auto* verify = app.add_subcommand("verify", "Run the full identity suite on a module and a perturbation");
    common(verify);
    auto* invariance = app.add_subcommand("verify-invariance", "Certify [tau_F] = [tau_G] with an explicit witness");
    common(invariance);
    invariance->add_option("--witness-tol", cfg.witness_tol, "Witness tolerance")->capture_default_str();
    auto* witness = app.add_subcommand("witness", "Dump the coboundary witness and its residuals");
    common(witness);
    auto* pair = app.add_subcommand("pair", "Multiplicative character on exponentials modulo the lattice");
    common(pair);
    pair->add_option("--logs", cfg.logs_path, "Logs JSON {\"a\": [...], \"b\": [...]}");

    auto* table = app.add_subcommand("hardy-table", "Index oracle and m=2 pairing on discrete Hardy modules");
    std::vector<std::size_t> grids{16, 32, 64};
    std::vector<int> windings{-3, -2, -1, 1, 2, 3};
    std::size_t anchor = 64;
    table->add_option("--N", grids, "Grid sizes")->capture_default_str();
    table->add_option("--w", windings, "Winding numbers")->capture_default_str();
    table->add_option("--anchor", anchor, "Grid used to pin the constant")->capture_default_str();
    table->add_option("--csv", cfg.output_path, "Write the table as CSV");
    table->add_option("--report", cfg.report_path, "Write the JSON report here");

    auto* make = app.add_subcommand("make-model", "Construct a model module");
    make->require_subcommand(1);
    std::size_t N = 16, n = 4;
    int model_m = 0;
    std::string algebra_spec = "ut2";
    auto* hardy = make->add_subcommand("hardy", "Discrete Hardy module (m = 2)");
    hardy->add_option("--N", N, "Grid size")->capture_default_str();
    auto* even = make->add_subcommand("even", "Graded toy module over C^3");
    even->add_option("--n", n, "Half dimension of the Hilbert space")->capture_default_str();
    auto* refl = make->add_subcommand("reflection", "Ungraded module with a random reflection");
    refl->add_option("--n", n, "Hilbert space dimension")->capture_default_str();
    refl->add_option("--algebra", algebra_spec, "ut2, pointwise<k>, matrix<k> or an algebra JSON path")
        ->capture_default_str();
    for (auto* sc : {hardy, even, refl}) sc->add_option("-o,--output", cfg.output_path, "Output path");
    for (auto* sc : {even, refl}) {
        sc->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
        sc->add_option("--m", model_m, "Summability degree");
    }

    auto* make_pert = app.add_subcommand("make-perturbation", "Conjugation perturbation T = uFu* - F");
    make_pert->add_option("--module", cfg.module_path, "Module JSON")->required();
    make_pert->add_option("--eps", cfg.eps, "Strength")->capture_default_str();
    make_pert->add_option("--seed", cfg.seed, "Seed")->capture_default_str();
    make_pert->add_option("-o,--output", cfg.output_path, "Output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) return cmd_verify(cfg);
        if (*invariance) return cmd_verify_invariance(cfg, false);
        if (*witness) return cmd_verify_invariance(cfg, true);
        if (*pair) return cmd_pair(cfg);
        if (*table) return cmd_hardy_table(cfg, grids, windings, anchor);
        if (*make) {
            if (*hardy) write_or_print(cfg.output_path, io::module_to_json(models::discrete_hardy(N)));
            if (*even) write_or_print(cfg.output_path, io::module_to_json(models::toy_even_module(n, cfg.seed, model_m ? model_m : 3)));
            if (*refl)
                write_or_print(cfg.output_path, io::module_to_json(models::random_reflection_module(
                                                    n, algebra_by_name(algebra_spec), cfg.seed, model_m ? model_m : 2)));
            return 0;
        }
        if (*make_pert) {
            const FredholmModule f = load_module(cfg);
            write_or_print(cfg.output_path, io::perturbation_to_json(models::conjugation_perturbation(f, cfg.seed, cfg.eps)));
            return 0;
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
