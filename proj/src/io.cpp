#include "fkhom/io.hpp"

#include <cmath>
#include <fstream>

#include <Eigen/QR>

namespace fkhom::io {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(2) << "\n";
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw InputError("expected a complex number [re, im], got " + j.dump());
}

json matrix_to_json(const Matrix& x) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < x.cols(); ++k) row.push_back(complex_to_json(x(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InputError("expected a nonempty matrix");
    const bool rows = j[0].is_array() && !j[0].empty() && (j[0][0].is_array() || j[0].size() != 2 || !j[0][0].is_number());
    if (rows) {
        const auto n = static_cast<Eigen::Index>(j.size());
        const auto c = static_cast<Eigen::Index>(j[0].size());
        Matrix x(n, c);
        for (Eigen::Index i = 0; i < n; ++i) {
            const json& row = j[static_cast<std::size_t>(i)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c) throw InputError("ragged matrix rows");
            for (Eigen::Index k = 0; k < c; ++k) x(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
        }
        return x;
    }
    const auto total = j.size();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(total))));
    if (static_cast<std::size_t>(n * n) != total) throw InputError("flat matrix length is not a square");
    Matrix x(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) x(i, k) = complex_from_json(j[static_cast<std::size_t>(i * n + k)]);
    return x;
}

json element_to_json(const Element& x) {
    json a = json::array();
    for (std::size_t i = 0; i < x.size(); ++i) a.push_back(complex_to_json(x[i]));
    return a;
}

Element element_from_json(const json& j) {
    if (!j.is_array()) throw InputError("expected an element as an array of coefficients");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
    return Element(std::move(v));
}

json algebra_to_json(const Algebra& a) {
    const std::size_t d = a.dim();
    json s = json::array();
    for (std::size_t i = 0; i < d; ++i) {
        json si = json::array();
        for (std::size_t k = 0; k < d; ++k) {
            json sij = json::array();
            for (std::size_t l = 0; l < d; ++l) sij.push_back(complex_to_json(a.structure(i, k, l)));
            si.push_back(std::move(sij));
        }
        s.push_back(std::move(si));
    }
    json out = {{"dim", d}, {"labels", a.labels()}, {"structure", std::move(s)}};
    out["unit"] = a.unit() ? element_to_json(Element(*a.unit())) : json(nullptr);
    out["grading"] = a.grading() ? json(*a.grading()) : json(nullptr);
    return out;
}

Algebra algebra_from_json(const json& j) {
    try {
        const auto d = j.at("dim").get<std::size_t>();
        std::vector<std::string> labels;
        if (j.contains("labels") && !j["labels"].is_null()) labels = j["labels"].get<std::vector<std::string>>();
        const json& s = j.at("structure");
        std::vector<cplx> c(d * d * d, cplx(0.0));
        if (s.size() != d) throw InputError("structure must have dim rows");
        for (std::size_t i = 0; i < d; ++i) {
            if (s[i].size() != d) throw InputError("structure[i] must have dim entries");
            for (std::size_t k = 0; k < d; ++k) {
                if (s[i][k].size() != d) throw InputError("structure[i][j] must have dim entries");
                for (std::size_t l = 0; l < d; ++l) c[(i * d + k) * d + l] = complex_from_json(s[i][k][l]);
            }
        }
        std::optional<Vector> unit;
        if (j.contains("unit") && !j["unit"].is_null()) unit = element_from_json(j["unit"]).coeffs();
        std::optional<std::vector<int>> grading;
        if (j.contains("grading") && !j["grading"].is_null()) grading = j["grading"].get<std::vector<int>>();
        return Algebra(d, std::move(labels), std::move(c), std::move(unit), std::move(grading));
    } catch (const json::exception& e) {
        throw InputError(std::string("algebra JSON: ") + e.what());
    }
}

Algebra infer_algebra(const std::vector<Matrix>& rep, double tol) {
    const std::size_t d = rep.size();
    if (d == 0) throw InputError("cannot infer an algebra from an empty representation");
    const auto n = rep.front().rows();
    Matrix basis(n * n, static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) basis.col(static_cast<Eigen::Index>(i)) = rep[i].reshaped();
    Eigen::ColPivHouseholderQR<Matrix> qr(basis);
    if (qr.rank() != static_cast<Eigen::Index>(d))
        throw InputError("representation matrices are linearly dependent; supply the algebra explicitly");
    std::vector<cplx> c(d * d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            const Matrix prod = rep[i] * rep[k];
            const Vector coeff = qr.solve(Vector(prod.reshaped()));
            if ((basis * coeff - prod.reshaped()).cwiseAbs().maxCoeff() > tol)
                throw InputError("representation is not closed under products; supply the algebra explicitly");
            for (std::size_t l = 0; l < d; ++l) c[(i * d + k) * d + l] = coeff(static_cast<Eigen::Index>(l));
        }
    return Algebra(d, {}, std::move(c));
}

json module_to_json(const FredholmModule& f) {
    json rep = json::array();
    for (const auto& x : f.rep()) rep.push_back(matrix_to_json(x));
    json out = {{"n", f.hilbert_dim()}, {"rep", std::move(rep)}, {"F", matrix_to_json(f.F())}, {"m", f.m()}};
    out["gamma"] = f.graded() ? matrix_to_json(f.gamma()) : json(nullptr);
    out["algebra"] = algebra_to_json(f.algebra());
    return out;
}

FredholmModule module_from_json(const json& j) {
    try {
        std::vector<Matrix> rep;
        for (const auto& x : j.at("rep")) rep.push_back(matrix_from_json(x));
        Matrix F = matrix_from_json(j.at("F"));
        if (j.contains("n") && j["n"].get<Eigen::Index>() != F.rows())
            throw InputError("module n does not match the size of F");
        std::optional<Matrix> gamma;
        if (j.contains("gamma") && !j["gamma"].is_null()) gamma = matrix_from_json(j["gamma"]);
        const int m = j.at("m").get<int>();
        Algebra a = j.contains("algebra") ? algebra_from_json(j["algebra"]) : infer_algebra(rep);
        return FredholmModule(std::move(a), std::move(rep), std::move(F), std::move(gamma), m);
    } catch (const json::exception& e) {
        throw InputError(std::string("module JSON: ") + e.what());
    }
}

json perturbation_to_json(const Matrix& T) { return {{"T", matrix_to_json(T)}}; }

Matrix perturbation_from_json(const json& j) {
    if (!j.contains("T")) throw InputError("perturbation JSON needs a \"T\" entry");
    return matrix_from_json(j["T"]);
}

Logs logs_from_json(const json& j) {
    Logs l;
    try {
        for (const auto& x : j.at("a")) l.a.push_back(element_from_json(x));
        for (const auto& x : j.at("b")) l.b.push_back(element_from_json(x));
    } catch (const json::exception& e) {
        throw InputError(std::string("logs JSON: ") + e.what());
    }
    return l;
}

json logs_to_json(const Logs& logs) {
    json a = json::array(), b = json::array();
    for (const auto& x : logs.a) a.push_back(element_to_json(x));
    for (const auto& x : logs.b) b.push_back(element_to_json(x));
    return {{"a", std::move(a)}, {"b", std::move(b)}};
}

json cochain_to_json(const Cochain& c) {
    json v = json::array();
    for (std::size_t i = 0; i < c.values().size(); ++i) v.push_back(complex_to_json(c.values()[i]));
    return {{"degree", c.degree()}, {"dim", c.dim()}, {"values", std::move(v)}};
}

json total_cochain_to_json(const TotalCochain& c) {
    json comps = json::array();
    for (const auto& x : c.components()) comps.push_back(cochain_to_json(x));
    return {{"top_degree", c.top_degree()}, {"dim", c.dim()}, {"components", std::move(comps)}};
}

}  // namespace fkhom::io
