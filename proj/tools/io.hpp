#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "structbe/core.hpp"

namespace structbe::io {

using nlohmann::json;

// Input that does not match the documented schema.
class MalformedInput : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PolynomialDocument {
    MatrixPolynomial<double> poly;
    std::optional<StructureClass> structure;
    std::vector<EigenPairApprox<double>> pairs;
    std::vector<std::size_t> renormalized;  // indices of pairs whose x was rescaled
};

struct AnsatzEntry {
    std::optional<StructureClass> pencil_structure;
    VectorC<double> v;
};

json read_json(const std::filesystem::path &path);

Complex<double> complex_from(const json &j);
json complex_to(Complex<double> z);
VectorC<double> vector_from(const json &j);
json vector_to(const VectorC<double> &v);

PolynomialDocument polynomial_from(const json &j);
json polynomial_to(const MatrixPolynomial<double> &p, std::optional<StructureClass> s);

// Either {"pencil_structure": ..., "v": [...]} or {"ansatz": [ ... ]}.
std::vector<AnsatzEntry> ansatz_from(const json &j);

std::string fmt(double x);

// Writes through a temporary sibling and renames, so a failed run leaves no partial file.
void write_atomic(const std::filesystem::path &path, const std::string &content);

} // namespace structbe::io
