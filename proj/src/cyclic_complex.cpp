#include "fkhom/cyclic_complex.hpp"

#include <cmath>

namespace fkhom {

namespace {

void require_dim(const Algebra& a, std::size_t dim) {
    if (a.dim() != dim)
        throw InputError("cochain dimension " + std::to_string(dim) + " does not match algebra dimension " +
                         std::to_string(a.dim()));
}

}  // namespace

cplx Cochain::evaluate(std::span<const Element> args) const {
    if (args.size() != static_cast<std::size_t>(degree_) + 1)
        throw InputError("cochain of degree " + std::to_string(degree_) + " needs " + std::to_string(degree_ + 1) +
                         " arguments");
    for (const auto& a : args)
        if (a.size() != dim()) throw InputError("argument length does not match cochain dimension");
    cplx total = 0.0;
    std::vector<std::size_t> idx(args.size());
    for (std::size_t flat = 0; flat < values_.size(); ++flat) {
        const cplx v = values_[flat];
        if (v == cplx(0.0)) continue;
        values_.unflatten(flat, idx);
        cplx w = v;
        for (std::size_t r = 0; r < args.size() && w != cplx(0.0); ++r) w *= args[r][idx[r]];
        total += w;
    }
    return total;
}

Chain Chain::simple(std::span<const Element> factors) {
    if (factors.empty()) throw InputError("a chain needs at least one factor");
    const std::size_t d = factors.front().size();
    Chain c(d, static_cast<int>(factors.size()) - 1);
    std::vector<std::size_t> idx(factors.size());
    for (std::size_t flat = 0; flat < c.values_.size(); ++flat) {
        c.values_.unflatten(flat, idx);
        cplx w = 1.0;
        for (std::size_t r = 0; r < factors.size(); ++r) w *= factors[r][idx[r]];
        c.values_[flat] = w;
    }
    return c;
}

TotalCochain::TotalCochain(int top_degree, std::size_t dim) : top_degree_(top_degree), dim_(dim) {
    for (int d = top_degree; d >= 0; d -= 2) components_.emplace_back(dim, d);
}

TotalCochain::TotalCochain(int top_degree, std::vector<Cochain> components)
    : top_degree_(top_degree), components_(std::move(components)) {
    int expected = top_degree;
    for (const auto& c : components_) {
        if (c.degree() != expected) throw InputError("total cochain components must descend in degree by 2");
        expected -= 2;
    }
    if (expected >= 0) throw InputError("total cochain is missing low-degree components");
    dim_ = components_.empty() ? 0 : components_.front().dim();
    for (const auto& c : components_)
        if (c.dim() != dim_) throw InputError("total cochain components over different dimensions");
}

double TotalCochain::max_abs() const {
    double m = 0.0;
    for (const auto& c : components_) m = std::max(m, c.max_abs());
    return m;
}

Cochain hochschild_b(const Algebra& unital, const Cochain& phi) {
    const std::size_t d = phi.dim();
    require_dim(unital, d);
    const int m = phi.degree();
    const std::size_t out_rank = static_cast<std::size_t>(m) + 2;
    Cochain out(d, m + 1);
    const Tensor& in = phi.values();
    std::vector<std::size_t> idx(out_rank);
    std::vector<std::size_t> arg(static_cast<std::size_t>(m) + 1);
    for (std::size_t flat = 0; flat < out.values().size(); ++flat) {
        out.values().unflatten(flat, idx);
        cplx s = 0.0;
        for (std::size_t i = 0; i <= static_cast<std::size_t>(m); ++i) {
            // phi(a0, ..., a_i a_{i+1}, ..., a_{m+1})
            for (std::size_t r = 0; r < i; ++r) arg[r] = idx[r];
            for (std::size_t r = i + 1; r <= static_cast<std::size_t>(m); ++r) arg[r] = idx[r + 1];
            cplx term = 0.0;
            for (const auto& [k, c] : unital.product_terms(idx[i], idx[i + 1])) {
                arg[i] = k;
                term += c * in.at(arg);
            }
            s += (i % 2 == 0) ? term : -term;
        }
        // phi(a_{m+1} a0, a1, ..., a_m)
        for (std::size_t r = 1; r <= static_cast<std::size_t>(m); ++r) arg[r] = idx[r];
        cplx term = 0.0;
        for (const auto& [k, c] : unital.product_terms(idx[out_rank - 1], idx[0])) {
            arg[0] = k;
            term += c * in.at(arg);
        }
        s += ((m + 1) % 2 == 0) ? term : -term;
        out.values()[flat] = s;
    }
    return out;
}

Cochain connes_B(const Algebra& unital, const Cochain& phi) {
    const std::size_t d = phi.dim();
    require_dim(unital, d);
    const int m = phi.degree();
    if (m == 0) return Cochain(d, 0);
    if (!unital.unit()) throw InputError("connes_B needs a unital algebra (unitalize first)");
    const Vector& one = *unital.unit();

    // B0 phi, degree m-1
    Cochain b0(d, m - 1);
    const Tensor& in = phi.values();
    const std::size_t n = static_cast<std::size_t>(m);  // arguments of B0 phi
    std::vector<std::size_t> idx(n), arg(n + 1);
    const double sign_tail = (m % 2 == 0) ? -1.0 : 1.0;  // -(-1)^m
    for (std::size_t flat = 0; flat < b0.values().size(); ++flat) {
        b0.values().unflatten(flat, idx);
        cplx s = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            const cplx u = one(static_cast<Eigen::Index>(c));
            if (u == cplx(0.0)) continue;
            arg[0] = c;
            for (std::size_t r = 0; r < n; ++r) arg[r + 1] = idx[r];
            s += u * in.at(arg);
            for (std::size_t r = 0; r < n; ++r) arg[r] = idx[r];
            arg[n] = c;
            s += sign_tail * u * in.at(arg);
        }
        b0.values()[flat] = s;
    }

    // cyclic antisymmetrization
    Cochain out(d, m - 1);
    std::vector<std::size_t> rot(n);
    for (std::size_t flat = 0; flat < out.values().size(); ++flat) {
        out.values().unflatten(flat, idx);
        cplx s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t r = 0; r < n; ++r) rot[r] = idx[(j + r) % n];
            const bool negative = ((m - 1) % 2 != 0) && (j % 2 != 0);
            s += negative ? -b0.values().at(rot) : b0.values().at(rot);
        }
        out.values()[flat] = s;
    }
    return out;
}

TotalCochain total_coboundary(const Algebra& unital, const TotalCochain& psi) {
    const auto& comps = psi.components();
    if (comps.empty()) return TotalCochain(psi.top_degree() + 1, unital.dim());
    std::vector<Cochain> out;
    out.push_back(hochschild_b(unital, comps.front()));
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].degree() == 0) break;  // B of degree 0 is zero and there is no lower component
        Cochain c = connes_B(unital, comps[i]);
        if (i + 1 < comps.size()) c.values() += hochschild_b(unital, comps[i + 1]).values();
        out.push_back(std::move(c));
    }
    return TotalCochain(psi.top_degree() + 1, std::move(out));
}

TotalCochain periodicity_S(const TotalCochain& psi) {
    if (psi.components().empty()) return TotalCochain(psi.top_degree() + 2, psi.dim());
    std::vector<Cochain> out;
    out.emplace_back(psi.dim(), psi.top_degree() + 2);
    for (const auto& c : psi.components()) out.push_back(c);
    return TotalCochain(psi.top_degree() + 2, std::move(out));
}

TotalCochain restrict_to_scalars(const Algebra& unital, const TotalCochain& psi) {
    if (!unital.unit()) throw InputError("restrict_to_scalars needs a unital algebra");
    const Vector& one = *unital.unit();
    std::vector<Cochain> out;
    for (const auto& c : psi.components()) {
        require_dim(unital, c.dim());
        Cochain r(1, c.degree());
        std::vector<Element> args(static_cast<std::size_t>(c.degree()) + 1, Element(one));
        r.values()[0] = c.evaluate(args);
        out.push_back(std::move(r));
    }
    if (out.empty()) return TotalCochain(psi.top_degree(), std::size_t{1});
    return TotalCochain(psi.top_degree(), std::move(out));
}

bool is_reduced(const Algebra& unital, const TotalCochain& psi, double tol) {
    return restrict_to_scalars(unital, psi).max_abs() <= tol;
}

cplx pair_cochain_chain(const Cochain& phi, const Chain& x) {
    if (phi.degree() != x.degree())
        throw InputError("pairing degree mismatch: cochain " + std::to_string(phi.degree()) + " vs chain " +
                         std::to_string(x.degree()));
    if (phi.dim() != x.dim()) throw InputError("pairing dimension mismatch");
    cplx s = 0.0;
    for (std::size_t i = 0; i < phi.values().size(); ++i) s += phi.values()[i] * x.values()[i];
    return s;
}

TensorDiff compare(const Tensor& a, const Tensor& b) {
    if (!a.same_shape(b)) throw InputError("compare: tensor shape mismatch");
    TensorDiff d;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double r = std::abs(a[i] - b[i]);
        if (r > d.max_residual) {
            d.max_residual = r;
            worst = i;
        }
    }
    d.worst_tuple.resize(a.rank());
    a.unflatten(worst, d.worst_tuple);
    return d;
}

}  // namespace fkhom
