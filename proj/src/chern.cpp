#include "fkhom/chern.hpp"

#include <algorithm>
#include <functional>

namespace fkhom {

namespace {

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

Rational eval_poly(const std::vector<Rational>& c, const Rational& t) {
    Rational r = 0;
    for (std::size_t i = c.size(); i-- > 0;) r = r * t + c[i];
    return r;
}

std::vector<Rational> poly_add(std::vector<Rational> a, const std::vector<Rational>& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rational> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

void trim(std::vector<Rational>& a) {
    while (!a.empty() && a.back().numerator() == 0) a.pop_back();
}

// Split an element into homogeneous parts by word degree.
std::map<int, DGAElement> by_degree(const DGAElement& x) {
    std::map<int, DGAElement::Terms> parts;
    for (const auto& [w, c] : x.terms()) parts[word_degree(w)].emplace(w, c);
    std::map<int, DGAElement> out;
    for (auto& [d, t] : parts) out.emplace(d, DGAElement(std::move(t)));
    return out;
}

// Tr(A B) without forming the product.
cplx trace_product(const Matrix& a, const Matrix& b) { return (a.transpose().cwiseProduct(b)).sum(); }

FredholmModule perturbed_module(const FredholmModule& f, const Matrix& T, double tol) {
    return perturb(f, T, tol).perturbed;
}

}  // namespace

IntervalForm IntervalForm::monomial(int form_degree, int power, Rational c) {
    IntervalForm out;
    auto& v = form_degree == 0 ? out.p : out.q;
    v.assign(static_cast<std::size_t>(power) + 1, Rational(0));
    v.back() = c;
    trim(v);
    return out;
}

IntervalForm IntervalForm::operator+(const IntervalForm& o) const {
    IntervalForm r{poly_add(p, o.p), poly_add(q, o.q)};
    trim(r.p);
    trim(r.q);
    return r;
}

IntervalForm IntervalForm::operator*(const IntervalForm& o) const {
    // (p + q dt)(p' + q' dt) = pp' + (pq' + qp') dt
    IntervalForm r{poly_mul(p, o.p), poly_add(poly_mul(p, o.q), poly_mul(q, o.p))};
    trim(r.p);
    trim(r.q);
    return r;
}

IntervalForm IntervalForm::d() const {
    IntervalForm r;
    for (std::size_t i = 1; i < p.size(); ++i) r.q.push_back(p[i] * static_cast<long long>(i));
    trim(r.q);
    return r;
}

Rational IntervalForm::integral() const {
    Rational s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q[i] / static_cast<long long>(i + 1);
    return s;
}

Rational IntervalForm::p_at(const Rational& t) const { return eval_poly(p, t); }

bool IntervalForm::operator==(const IntervalForm& o) const {
    auto a = *this, b = o;
    trim(a.p), trim(a.q), trim(b.p), trim(b.q);
    return a.p == b.p && a.q == b.q;
}

ChainElement::ChainElement(int f, int j, DGAElement w) { add(f, j, w); }

void ChainElement::add(int f, int j, const DGAElement& w) {
    if (f > 1) return;
    auto it = terms_.find({f, j});
    if (it == terms_.end()) {
        if (!w.is_zero()) terms_.emplace(Key{f, j}, w);
        return;
    }
    it->second = it->second + w;
    if (it->second.is_zero()) terms_.erase(it);
}

ChainElement ChainElement::operator+(const ChainElement& o) const {
    ChainElement r = *this;
    for (const auto& [k, w] : o.terms_) r.add(k.first, k.second, w);
    return r;
}

ChainElement ChainElement::operator-(const ChainElement& o) const { return *this + o * cplx(-1.0); }

ChainElement ChainElement::operator*(cplx s) const {
    ChainElement r;
    for (const auto& [k, w] : terms_) r.add(k.first, k.second, w * s);
    return r;
}

double max_abs_diff(const ChainElement& x, const ChainElement& y) {
    double m = 0.0;
    for (const auto& [k, w] : (x - y).terms()) m = std::max(m, w.max_abs());
    return m;
}

void RepChain::add(int f, int j, int k, const Matrix& x) {
    if (f > 1) return;
    auto it = terms_.find({f, j, k});
    if (it == terms_.end())
        terms_.emplace(Key{f, j, k}, x);
    else
        it->second += x;
}

PerturbationChain::PerturbationChain(FredholmModule f, Matrix T, double tol)
    : f_(std::move(f)), T_(std::move(T)), g_(perturbed_module(f_, T_, tol)), dga_(f_.unitalization()) {}

ChainElement PerturbationChain::multiply(const ChainElement& x, const ChainElement& y) const {
    ChainElement out;
    for (const auto& [kx, wx] : x.terms())
        for (const auto& [ky, wy] : y.terms()) {
            if (kx.first + ky.first > 1) continue;
            for (const auto& [deg, part] : by_degree(wx)) {
                const cplx sign = (deg * ky.first) % 2 == 0 ? 1.0 : -1.0;
                out.add(kx.first + ky.first, kx.second + ky.second, dga_.multiply(part, wy) * sign);
            }
        }
    return out;
}

ChainElement PerturbationChain::rho(const Element& a) const { return ChainElement(0, 0, dga_.rho(a)); }

ChainElement PerturbationChain::connection_apply(const ChainElement& x) const {
    ChainElement out;
    const DGAElement tau = dga_.tau();
    for (const auto& [key, w] : x.terms()) {
        const auto [f, j] = key;
        const cplx s = f == 0 ? 1.0 : -1.0;
        if (f == 0 && j > 0) out.add(1, j - 1, w * cplx(static_cast<double>(j)));
        out.add(f, j, dga_.differential(w) * s);
        for (const auto& [deg, part] : by_degree(w)) out.add(f, j + 1, dga_.graded_commutator(tau, part) * s);
    }
    return out;
}

ChainElement PerturbationChain::curvature() const {
    const DGAElement tau = dga_.tau();
    const DGAElement tau2 = dga_.multiply(tau, tau);
    ChainElement c(1, 0, tau);
    c.add(0, 1, tau2 * cplx(-1.0));
    c.add(0, 2, tau2);
    return c;
}

ChainElement PerturbationChain::curvature_power(int i) const {
    if (i < 0) throw InputError("curvature power must be non-negative");
    if (i > m()) throw BudgetError("curvature power " + std::to_string(i) + " exceeds m = " + std::to_string(m()));
    ChainElement out(0, 0, dga_.one());
    const ChainElement theta = curvature();
    for (int r = 0; r < i; ++r) out = multiply(out, theta);
    return out;
}

cplx PerturbationChain::graded_trace(const ChainElement& x) const {
    cplx s = 0.0;
    const Matrix lead = f_.gamma_m() * f_.F();
    for (const auto& [key, w] : x.terms()) {
        const auto [f, j] = key;
        for (const auto& [word, c] : w.terms())
            if (f + word_degree(word) != m())
                throw InputError("graded trace needs total degree m = " + std::to_string(m()));
        if (f == 0) continue;
        const Rational weight = Rational(1, 2) * IntervalForm::monomial(1, j).integral();
        const double wt = boost::rational_cast<double>(weight);
        s += wt * trace_product(lead, pi_represent(f_, T_, dga_.differential(w)));
    }
    return s;
}

DGAElement PerturbationChain::restrict_to(const ChainElement& x, int side) const {
    if (side != 0 && side != 1) throw InputError("restriction side must be 0 or 1");
    DGAElement out;
    for (const auto& [key, w] : x.terms()) {
        const auto [f, j] = key;
        if (f != 0) continue;
        if (side == 0 && j != 0) continue;
        out = out + w;
    }
    return out;
}

DGAElement PerturbationChain::boundary_connection(const DGAElement& w, int side) const {
    DGAElement out = dga_.differential(w);
    if (side == 1)
        for (const auto& [deg, part] : by_degree(w)) out = out + dga_.graded_commutator(dga_.tau(), part);
    return out;
}

RepChain PerturbationChain::represent(const ChainElement& x) const {
    RepChain out;
    for (const auto& [key, w] : x.terms())
        for (const auto& [deg, part] : by_degree(w)) out.add(key.first, key.second, deg, pi_represent(f_, T_, part));
    return out;
}

RepChain PerturbationChain::rep_multiply(const RepChain& x, const RepChain& y) const {
    RepChain out;
    for (const auto& [kx, a] : x.terms())
        for (const auto& [ky, b] : y.terms()) {
            const auto [fx, jx, dx] = kx;
            const auto [fy, jy, dy] = ky;
            if (fx + fy > 1) continue;
            const double sign = (dx * fy) % 2 == 0 ? 1.0 : -1.0;
            out.add(fx + fy, jx + jy, dx + dy, sign * (a * b));
        }
    return out;
}

RepChain PerturbationChain::rep_rho(std::size_t i) const {
    RepChain r;
    r.add(0, 0, 0, f_.rep_tilde(i));
    return r;
}

RepChain PerturbationChain::rep_connection(const RepChain& x) const {
    RepChain out;
    const Matrix& F = f_.F();
    for (const auto& [key, X] : x.terms()) {
        const auto [f, j, k] = key;
        const double s = f == 0 ? 1.0 : -1.0;
        const double gk = k % 2 == 0 ? 1.0 : -1.0;
        if (f == 0 && j > 0) out.add(1, j - 1, k, static_cast<double>(j) * X);
        out.add(f, j, k + 1, s * (F * X - gk * (X * F)));
        out.add(f, j + 1, k + 1, s * (T_ * X - gk * (X * T_)));
    }
    return out;
}

RepChain PerturbationChain::rep_curvature_power(int i) const {
    if (i < 0) throw InputError("curvature power must be non-negative");
    if (i > m()) throw BudgetError("curvature power " + std::to_string(i) + " exceeds m = " + std::to_string(m()));
    if (theta_powers_.empty()) {
        RepChain one;
        const auto n = T_.rows();
        one.add(0, 0, 0, Matrix::Identity(n, n));
        theta_powers_.push_back(one);
    }
    if (static_cast<std::size_t>(i) < theta_powers_.size()) return theta_powers_[static_cast<std::size_t>(i)];
    RepChain theta;
    const Matrix T2 = T_ * T_;
    theta.add(1, 0, 1, T_);
    theta.add(0, 1, 2, -T2);
    theta.add(0, 2, 2, T2);
    while (theta_powers_.size() <= static_cast<std::size_t>(i))
        theta_powers_.push_back(rep_multiply(theta_powers_.back(), theta));
    return theta_powers_[static_cast<std::size_t>(i)];
}

cplx PerturbationChain::rep_graded_trace(const RepChain& x) const {
    const Matrix& F = f_.F();
    const Matrix lead = f_.gamma_m() * F;
    const double gk = (m() - 1) % 2 == 0 ? 1.0 : -1.0;
    cplx s = 0.0;
    for (const auto& [key, X] : x.terms()) {
        const auto [f, j, k] = key;
        if (f + k != m()) throw InputError("graded trace needs total degree m = " + std::to_string(m()));
        if (f == 0) continue;
        const double wt = boost::rational_cast<double>(Rational(1, 2) * IntervalForm::monomial(1, j).integral());
        s += wt * trace_product(lead, F * X - gk * (X * F));
    }
    return s;
}

std::vector<std::vector<int>> compositions(int total, int parts) {
    std::vector<std::vector<int>> out;
    if (parts <= 0) {
        if (total == 0) out.emplace_back();
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
        if (pos + 1 == cur.size()) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            cur[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, total);
    return out;
}

namespace {

void check_component(const PerturbationChain& c, int k, std::size_t arity) {
    const int deg = c.m() - 2 * k;
    if (k < 0 || deg < 0)
        throw InputError("Chern component k = " + std::to_string(k) + " out of range for m = " + std::to_string(c.m()));
    if (arity != static_cast<std::size_t>(deg) + 1)
        throw InputError("Chern component of degree " + std::to_string(deg) + " takes " + std::to_string(deg + 1) +
                         " arguments, got " + std::to_string(arity));
}

// Precomputed ρ(e_i) and ∇ρ(e_i) for every basis element.
struct RepCache {
    std::vector<RepChain> rho, nabla_rho;
    explicit RepCache(const PerturbationChain& c) {
        const std::size_t d = c.module().unital_algebra().dim();
        for (std::size_t i = 0; i < d; ++i) {
            rho.push_back(c.rep_rho(i));
            nabla_rho.push_back(c.rep_connection(rho.back()));
        }
    }
};

cplx component_cached(const PerturbationChain& c, const RepCache& cache, int k, std::span<const std::size_t> args,
                      const std::vector<std::vector<int>>& comps) {
    const std::size_t d = cache.rho.size();
    for (std::size_t a : args)
        if (a >= d) throw InputError("basis index out of range");
    cplx total = 0.0;
    for (const auto& comp : comps) {
        RepChain prod = c.rep_multiply(cache.rho[args[0]], c.rep_curvature_power(comp[0]));
        for (std::size_t r = 1; r < args.size(); ++r) {
            prod = c.rep_multiply(prod, cache.nabla_rho[args[r]]);
            if (comp[r] > 0) prod = c.rep_multiply(prod, c.rep_curvature_power(comp[r]));
        }
        total += c.rep_graded_trace(prod);
    }
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    return sign / factorial(c.m() - k) * total;
}

}  // namespace

cplx chern_component(const PerturbationChain& c, int k, std::span<const std::size_t> args) {
    check_component(c, k, args.size());
    const RepCache cache(c);
    return component_cached(c, cache, k, args, compositions(k, static_cast<int>(args.size())));
}

cplx chern_component_symbolic(const PerturbationChain& c, int k, std::span<const Element> args) {
    check_component(c, k, args.size());
    cplx total = 0.0;
    for (const auto& comp : compositions(k, static_cast<int>(args.size()))) {
        ChainElement prod = c.multiply(c.rho(args[0]), c.curvature_power(comp[0]));
        for (std::size_t r = 1; r < args.size(); ++r) {
            prod = c.multiply(prod, c.connection_apply(c.rho(args[r])));
            prod = c.multiply(prod, c.curvature_power(comp[r]));
        }
        total += c.graded_trace(prod);
    }
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    return sign / factorial(c.m() - k) * total;
}

Cochain chern_cochain(const PerturbationChain& c, int k) {
    const int deg = c.m() - 2 * k;
    if (k < 0 || deg < 0) throw InputError("Chern component out of range");
    const std::size_t d = c.module().unital_algebra().dim();
    Cochain out(d, deg);
    const RepCache cache(c);
    const auto comps = compositions(k, deg + 1);
    std::vector<std::size_t> idx(static_cast<std::size_t>(deg) + 1);
    for (std::size_t flat = 0; flat < out.values().size(); ++flat) {
        out.values().unflatten(flat, idx);
        out.values()[flat] = component_cached(c, cache, k, idx, comps);
    }
    return out;
}

TotalCochain chain_chern_character(const PerturbationChain& c) {
    std::vector<Cochain> comps;
    for (int k = 0; 2 * k <= c.m(); ++k) comps.push_back(chern_cochain(c, k));
    return TotalCochain(c.m(), std::move(comps));
}

Cochain boundary_cycle_chern(const PerturbationChain& c, BoundarySide side) {
    const FredholmModule& f = c.module();
    const int m = f.m();
    const std::size_t d = f.unital_algebra().dim();
    const Matrix& F = f.F();
    const Matrix& T = c.T();
    std::vector<Matrix> nabla;
    for (std::size_t i = 0; i < d; ++i) {
        Matrix x = f.commutator(i);
        if (side == BoundarySide::G) x += T * f.rep_tilde(i) - f.rep_tilde(i) * T;
        nabla.push_back(std::move(x));
    }
    // ∫ω = ½ Tr(γ F [F, π(ω)]) = Tr(M π(ω))
    const double s = (m - 1) % 2 == 0 ? 1.0 : -1.0;
    const Matrix gF = f.gamma_m() * F;
    const Matrix M = (0.5 / factorial(m - 1)) * (gF * F - s * (F * gF));

    Cochain out(d, m - 1);
    const std::size_t rank = static_cast<std::size_t>(m);
    std::vector<Matrix> prefix(rank);
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t depth, std::size_t flat) {
        for (std::size_t i = 0; i < d; ++i) {
            const Matrix& step = depth == 0 ? f.rep_tilde(i) : nabla[i];
            const std::size_t next = flat * d + i;
            if (depth + 1 == rank) {
                out.values()[next] = depth == 0 ? trace_product(M, step) : trace_product(prefix[depth], step);
                continue;
            }
            prefix[depth + 1] = (depth == 0 ? M : prefix[depth]) * step;
            walk(depth + 1, next);
        }
    };
    walk(0, 0);
    return out;
}

TotalCochain witness_cochain(const PerturbationChain& c) {
    const std::size_t d = c.module().unital_algebra().dim();
    const int m = c.m();
    if (m < 2) return TotalCochain(m - 2, d);
    std::vector<Cochain> comps;
    for (int k = 1; 2 * k <= m; ++k) comps.push_back(chern_cochain(c, k));
    if (m % 2 == 0) {
        // subtract Ch⁰(1)·p, p(x) the coefficient of the adjoined unit
        Cochain& last = comps.back();
        last.values()[c.module().unitalization().unit_index()] = 0.0;
    }
    return TotalCochain(m - 2, std::move(comps));
}

namespace {

void compare_total(const TotalCochain& a, const TotalCochain& b, WitnessCheck& r) {
    for (std::size_t i = 0; i < a.components().size(); ++i) {
        const auto diff = compare(a.component(i).values(), b.component(i).values());
        if (r.worst_degree < 0 || diff.max_residual > r.max_residual) {
            r.max_residual = diff.max_residual;
            r.worst_degree = a.component(i).degree();
            r.worst_tuple = diff.worst_tuple;
        }
    }
}

}  // namespace

WitnessCheck check_witness(const PerturbationChain& c, const TotalCochain& psi, double tol) {
    const Algebra& A = c.module().unital_algebra();
    const int m = c.m();
    if (psi.top_degree() != m - 2) throw InputError("witness must have top degree m - 2");
    const Cochain tf = index_cocycle(c.module());
    const Cochain tg = index_cocycle(c.perturbed());
    TotalCochain rhs(m - 1, A.dim());
    rhs.components().front().values() = (tg.values() - tf.values()) * cplx(1.0 / factorial(m - 1));
    const TotalCochain lhs = psi.components().empty() ? TotalCochain(m - 1, A.dim()) : total_coboundary(A, psi);

    WitnessCheck r;
    compare_total(lhs, rhs, r);
    if (psi.components().empty()) {
        r.reduced = true;
    } else {
        r.reduced_violation = restrict_to_scalars(A, psi).max_abs();
        r.reduced = r.reduced_violation == 0.0;
    }
    r.pass = r.max_residual <= tol && r.reduced;
    return r;
}

WitnessCheck verify_cobordism_identity(const PerturbationChain& c, double tol) {
    const Algebra& A = c.module().unital_algebra();
    const int m = c.m();
    const TotalCochain lhs = total_coboundary(A, chain_chern_character(c));
    Cochain boundary = boundary_cycle_chern(c, BoundarySide::G);
    boundary.values() -= boundary_cycle_chern(c, BoundarySide::F).values();
    TotalCochain shifted(m - 1, A.dim());
    shifted.components().front() = std::move(boundary);
    const TotalCochain rhs = periodicity_S(shifted);
    WitnessCheck r;
    compare_total(lhs, rhs, r);
    r.reduced = true;
    r.pass = r.max_residual <= tol;
    return r;
}

InvarianceReport verify_perturbation_invariance(const FredholmModule& f, const Matrix& T, double tol) {
    const PerturbationChain c(f, T);
    InvarianceReport r;
    r.witness = witness_cochain(c);
    const WitnessCheck w = check_witness(c, r.witness, tol);
    r.pass = w.pass;
    r.max_residual = w.max_residual;
    r.worst_degree = w.worst_degree;
    r.worst_tuple = w.worst_tuple;
    r.reduced = w.reduced;
    r.involution_residual = max_abs(f.F() * T + T * f.F() + T * T);
    r.perturbation_norm = schatten_norm(T, f.m());
    r.tau_difference = (index_cocycle(c.perturbed()).values() - index_cocycle(f).values()).max_abs();
    r.schatten_f = schatten_report(f);
    r.schatten_g = schatten_report(c.perturbed());
    return r;
}

}  // namespace fkhom
