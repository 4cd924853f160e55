#include "fkhom/dga.hpp"

#include <cmath>
#include <sstream>

namespace fkhom {

int word_degree(const Word& w) {
    int d = 0;
    for (const auto& l : w) d += l.degree();
    return d;
}

DGAElement::DGAElement(Terms terms) {
    for (auto& [w, c] : terms)
        if (c != cplx(0.0)) terms_.emplace(w, c);
}

int DGAElement::degree() const {
    if (terms_.empty()) return -1;
    const int d = word_degree(terms_.begin()->first);
    for (const auto& [w, c] : terms_)
        if (word_degree(w) != d) throw InputError("element is not homogeneous");
    return d;
}

double DGAElement::max_abs() const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) m = std::max(m, std::abs(c));
    return m;
}

DGAElement DGAElement::operator+(const DGAElement& o) const {
    Terms t = terms_;
    for (const auto& [w, c] : o.terms_) t[w] += c;
    return DGAElement(std::move(t));
}

DGAElement DGAElement::operator-(const DGAElement& o) const { return *this + o * cplx(-1.0); }

DGAElement DGAElement::operator*(cplx s) const {
    Terms t;
    for (const auto& [w, c] : terms_) t.emplace(w, c * s);
    return DGAElement(std::move(t));
}

double max_abs_diff(const DGAElement& x, const DGAElement& y) { return (x - y).max_abs(); }

DGA::DGA(Unitalization tilde) : tilde_(std::move(tilde)) {}

void DGA::check_letter(const Letter& l) const {
    if ((l.kind == LetterKind::Alg || l.kind == LetterKind::DAlg) && l.index >= dim())
        throw InputError("letter index " + std::to_string(l.index) + " out of range for Ã of dimension " +
                         std::to_string(dim()));
}

DGAElement DGA::one() const { return DGAElement(DGAElement::Terms{{Word{}, 1.0}}); }
DGAElement DGA::alg(std::size_t i) const { return word({Letter::alg(i)}); }
DGAElement DGA::tau() const { return word({Letter::tau()}); }
DGAElement DGA::d_alg(std::size_t i) const { return word({Letter::d_alg(i)}); }

DGAElement DGA::rho(const Element& x) const {
    if (x.size() != dim()) throw InputError("rho: element does not belong to Ã");
    DGAElement::Terms raw;
    for (std::size_t i = 0; i < dim(); ++i)
        if (x[i] != cplx(0.0)) raw[Word{Letter::alg(i)}] += x[i];
    return normalize(raw);
}

DGAElement DGA::word(const Word& raw, cplx coeff) const { return normalize(DGAElement::Terms{{raw, coeff}}); }

namespace {

// Rewrite sites of a word: (position, rule). Rules: 0 dτ, 1 unit, 2 d1, 3 a b, 4 da b.
std::vector<std::pair<std::size_t, int>> sites(const Word& w, std::size_t unit) {
    std::vector<std::pair<std::size_t, int>> out;
    for (std::size_t p = 0; p < w.size(); ++p) {
        const Letter& l = w[p];
        if (l.kind == LetterKind::DTau) out.emplace_back(p, 0);
        if (l.kind == LetterKind::Alg && l.index == unit) out.emplace_back(p, 1);
        if (l.kind == LetterKind::DAlg && l.index == unit) out.emplace_back(p, 2);
        if (p + 1 < w.size() && w[p + 1].kind == LetterKind::Alg) {
            if (l.kind == LetterKind::Alg) out.emplace_back(p, 3);
            if (l.kind == LetterKind::DAlg) out.emplace_back(p, 4);
        }
    }
    return out;
}

Word splice(const Word& w, std::size_t p, std::size_t len, std::initializer_list<Letter> mid) {
    Word out(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
    out.insert(out.end(), mid.begin(), mid.end());
    out.insert(out.end(), w.begin() + static_cast<std::ptrdiff_t>(p + len), w.end());
    return out;
}

}  // namespace

bool DGA::is_normal(const Word& w) const { return sites(w, unit_index()).empty(); }

DGAElement DGA::normalize(const DGAElement::Terms& raw, std::mt19937_64* order) const {
    DGAElement::Terms pending;
    for (const auto& [w, c] : raw) {
        for (const auto& l : w) check_letter(l);
        if (c != cplx(0.0)) pending[w] += c;
    }
    DGAElement::Terms done;
    const Algebra& a = algebra();
    while (!pending.empty()) {
        auto it = pending.begin();
        const Word w = it->first;
        const cplx c = it->second;
        pending.erase(it);
        if (c == cplx(0.0)) continue;
        const auto s = sites(w, unit_index());
        if (s.empty()) {
            done[w] += c;
            continue;
        }
        std::size_t pick = 0;
        if (order) pick = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(*order);
        const auto [p, rule] = s[pick];
        switch (rule) {
            case 0: pending[splice(w, p, 1, {Letter::tau(), Letter::tau()})] -= c; break;
            case 1: pending[splice(w, p, 1, {})] += c; break;
            case 2: break;
            case 3:
                for (const auto& [k, ck] : a.product_terms(w[p].index, w[p + 1].index))
                    pending[splice(w, p, 2, {Letter::alg(k)})] += c * ck;
                break;
            case 4:
                for (const auto& [k, ck] : a.product_terms(w[p].index, w[p + 1].index))
                    pending[splice(w, p, 2, {Letter::d_alg(k)})] += c * ck;
                pending[splice(w, p, 2, {Letter::alg(w[p].index), Letter::d_alg(w[p + 1].index)})] -= c;
                break;
        }
    }
    return DGAElement(std::move(done));
}

DGAElement DGA::multiply(const DGAElement& x, const DGAElement& y) const {
    DGAElement::Terms raw;
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms()) {
            Word w = wx;
            w.insert(w.end(), wy.begin(), wy.end());
            raw[w] += cx * cy;
        }
    return normalize(raw);
}

DGAElement DGA::differential(const DGAElement& x) const {
    DGAElement::Terms raw;
    for (const auto& [w, c] : x.terms()) {
        int before = 0;
        for (std::size_t p = 0; p < w.size(); ++p) {
            const cplx sc = (before % 2 == 0) ? c : -c;
            switch (w[p].kind) {
                case LetterKind::Alg: raw[splice(w, p, 1, {Letter::d_alg(w[p].index)})] += sc; break;
                case LetterKind::Tau: raw[splice(w, p, 1, {Letter::tau(), Letter::tau()})] -= sc; break;
                case LetterKind::DAlg: break;
                // d(dτ) = 0 in Ω(Ã_τ)
                case LetterKind::DTau: break;
            }
            before += w[p].degree();
        }
    }
    return normalize(raw);
}

DGAElement DGA::graded_commutator(const DGAElement& x, const DGAElement& y) const {
    const int dx = std::max(x.degree(), 0), dy = std::max(y.degree(), 0);
    const DGAElement yx = multiply(y, x);
    return multiply(x, y) - ((dx * dy) % 2 == 0 ? yx : yx * cplx(-1.0));
}

namespace {

std::string format_coeff(cplx c) {
    std::ostringstream os;
    os.precision(12);
    if (c.imag() == 0.0)
        os << c.real();
    else if (c.real() == 0.0)
        os << c.imag() << "i";
    else
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
    return os.str();
}

}  // namespace

std::string DGA::to_string(const DGAElement& x) const {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : x.terms()) {
        if (!first) out += " + ";
        first = false;
        if (c != cplx(1.0) || w.empty()) out += format_coeff(c) + (w.empty() ? "" : " * ");
        for (std::size_t p = 0; p < w.size(); ++p) {
            if (p) out += " . ";
            switch (w[p].kind) {
                case LetterKind::Alg: out += "a" + std::to_string(w[p].index); break;
                case LetterKind::Tau: out += "tau"; break;
                case LetterKind::DAlg: out += "d(a" + std::to_string(w[p].index) + ")"; break;
                case LetterKind::DTau: out += "d(tau)"; break;
            }
        }
    }
    return out;
}

Matrix pi_word(const FredholmModule& f, const Matrix& T, const Word& w) {
    const auto n = f.F().rows();
    if (T.rows() != n || T.cols() != n) throw InputError("perturbation does not match the Hilbert space dimension");
    Matrix out = Matrix::Identity(n, n);
    for (const auto& l : w) {
        switch (l.kind) {
            case LetterKind::Alg: out = out * f.rep_tilde(l.index); break;
            case LetterKind::Tau: out = out * T; break;
            case LetterKind::DAlg: out = out * f.commutator(l.index); break;
            case LetterKind::DTau: out = out * (f.F() * T + T * f.F()); break;
        }
    }
    return out;
}

Matrix pi_represent(const FredholmModule& f, const Matrix& T, const DGAElement& x) {
    const auto n = f.F().rows();
    Matrix out = Matrix::Zero(n, n);
    for (const auto& [w, c] : x.terms()) out += c * pi_word(f, T, w);
    return out;
}

GradedOperator OperatorTarget::one() const {
    const auto n = F.rows();
    return {Matrix::Identity(n, n), Matrix::Zero(n, n)};
}

GradedOperator OperatorTarget::zero() const {
    const auto n = F.rows();
    return {Matrix::Zero(n, n), Matrix::Zero(n, n)};
}

GradedOperator OperatorTarget::add(const GradedOperator& x, const GradedOperator& y) const {
    return {x.even + y.even, x.odd + y.odd};
}

GradedOperator OperatorTarget::scale(cplx c, const GradedOperator& x) const { return {c * x.even, c * x.odd}; }

GradedOperator OperatorTarget::multiply(const GradedOperator& x, const GradedOperator& y) const {
    return {x.even * y.even + x.odd * y.odd, x.even * y.odd + x.odd * y.even};
}

GradedOperator OperatorTarget::differential(const GradedOperator& x) const {
    return {F * x.odd + x.odd * F, F * x.even - x.even * F};
}

double OperatorTarget::distance(const GradedOperator& x, const GradedOperator& y) const {
    return std::max(max_abs(x.even - y.even), max_abs(x.odd - y.odd));
}

GeneratorMap<OperatorTarget> operator_generator_map(const FredholmModule& f, const Matrix& T) {
    const auto n = f.F().rows();
    GeneratorMap<OperatorTarget> phi;
    for (std::size_t i = 0; i < f.unital_algebra().dim(); ++i)
        phi.basis.push_back({f.rep_tilde(i), Matrix::Zero(n, n)});
    phi.tau = {Matrix::Zero(n, n), T};
    return phi;
}

}  // namespace fkhom
