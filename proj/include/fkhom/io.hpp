#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "fkhom/algebra.hpp"
#include "fkhom/cyclic_complex.hpp"
#include "fkhom/fredholm.hpp"

namespace fkhom::io {

using json = nlohmann::json;

/// Parse errors, missing files and schema violations all surface as InputError.
json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

json complex_to_json(cplx z);
/// [re, im] or a bare real number.
cplx complex_from_json(const json& j);

/// Array of rows of [re, im]; a flat row-major list of n² entries is also accepted on input.
json matrix_to_json(const Matrix& x);
Matrix matrix_from_json(const json& j);

json element_to_json(const Element& x);
Element element_from_json(const json& j);

/// { "dim", "labels", "structure": structure[i][j][k] = [re,im], "unit", "grading" }
json algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const json& j);

/**
 * Structure constants recovered from a linearly independent family of matrices
 * closed under products; throws InputError when the family is not.
 */
Algebra infer_algebra(const std::vector<Matrix>& rep, double tol = kStructuralTol);

/// { "n", "rep", "F", "gamma", "m", "algebra" }. Without "algebra" the structure is inferred from rep.
json module_to_json(const FredholmModule& f);
FredholmModule module_from_json(const json& j);

/// { "T": matrix }
json perturbation_to_json(const Matrix& T);
Matrix perturbation_from_json(const json& j);

struct Logs {
    std::vector<Element> a;
    std::vector<Element> b;
};
/// { "a": [element...], "b": [element...] }
Logs logs_from_json(const json& j);
json logs_to_json(const Logs& logs);

/// { "degree", "dim", "values": row-major [re,im] list }
json cochain_to_json(const Cochain& c);
json total_cochain_to_json(const TotalCochain& c);

}  // namespace fkhom::io
