#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace structbe::io {

namespace {

double number(const json &j) {
    if (!j.is_number())
        throw MalformedInput("expected a number, got " + j.dump());
    return j.get<double>();
}

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key))
        throw MalformedInput(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::optional<StructureClass> structure_from(const json &j) {
    if (j.is_null())
        return std::nullopt;
    if (!j.is_string())
        throw MalformedInput("structure must be a string or null");
    const auto s = parse_structure(j.get<std::string>());
    if (!s)
        throw MalformedInput("unknown structure \"" + j.get<std::string>() + "\"");
    return s;
}

} // namespace

json read_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw MalformedInput("cannot read " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw MalformedInput(path.string() + ": " + e.what());
    }
}

Complex<double> complex_from(const json &j) {
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2)
        throw MalformedInput("complex scalars are [re, im], got " + j.dump());
    return {number(j[0]), number(j[1])};
}

json complex_to(Complex<double> z) { return json::array({z.real(), z.imag()}); }

VectorC<double> vector_from(const json &j) {
    if (!j.is_array() || j.empty())
        throw MalformedInput("expected a non-empty array of complex scalars");
    VectorC<double> v(static_cast<Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        v(static_cast<Index>(i)) = complex_from(j[i]);
    return v;
}

json vector_to(const VectorC<double> &v) {
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i)
        out.push_back(complex_to(v(i)));
    return out;
}

PolynomialDocument polynomial_from(const json &j) {
    const json &nj = field(j, "n"), &mj = field(j, "m"), &cj = field(j, "coeffs");
    if (!nj.is_number_integer() || !mj.is_number_integer() || nj.get<long>() < 1 || mj.get<long>() < 0)
        throw MalformedInput("n must be a positive integer and m a non-negative integer");
    const Index n = nj.get<Index>();
    const int m = mj.get<int>();
    if (!cj.is_array() || cj.size() != static_cast<std::size_t>(m + 1))
        throw MalformedInput("coeffs must hold m + 1 matrices");
    std::vector<MatrixC<double>> coeffs;
    for (const json &a : cj) {
        if (!a.is_array() || a.size() != static_cast<std::size_t>(n))
            throw MalformedInput("each coefficient must have n rows");
        MatrixC<double> c(n, n);
        for (Index r = 0; r < n; ++r) {
            const json &row = a[static_cast<std::size_t>(r)];
            if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
                throw MalformedInput("each coefficient row must have n entries");
            for (Index k = 0; k < n; ++k)
                c(r, k) = complex_from(row[static_cast<std::size_t>(k)]);
        }
        coeffs.push_back(std::move(c));
    }

    PolynomialDocument doc{MatrixPolynomial<double>(std::move(coeffs)), std::nullopt, {}, {}};
    if (j.contains("structure"))
        doc.structure = structure_from(j.at("structure"));
    if (j.contains("pairs")) {
        const json &pj = j.at("pairs");
        if (!pj.is_array())
            throw MalformedInput("pairs must be an array");
        for (const json &e : pj) {
            const VectorC<double> x = vector_from(field(e, "x"));
            if (x.size() != n)
                throw MalformedInput("eigenvector length differs from n");
            if (!(x.norm() > 0))
                throw MalformedInput("eigenvector must be nonzero");
            doc.pairs.emplace_back(complex_from(field(e, "lambda")), x);
            if (doc.pairs.back().renormalized())
                doc.renormalized.push_back(doc.pairs.size() - 1);
        }
    }
    return doc;
}

json polynomial_to(const MatrixPolynomial<double> &p, std::optional<StructureClass> s) {
    json coeffs = json::array();
    for (int k = 0; k <= p.degree(); ++k) {
        json a = json::array();
        for (Index r = 0; r < p.dim(); ++r) {
            json row = json::array();
            for (Index c = 0; c < p.dim(); ++c)
                row.push_back(complex_to(p[k](r, c)));
            a.push_back(std::move(row));
        }
        coeffs.push_back(std::move(a));
    }
    json out = {{"n", p.dim()}, {"m", p.degree()}, {"coeffs", std::move(coeffs)}};
    out["structure"] = s ? json(std::string(to_string(*s))) : json(nullptr);
    return out;
}

std::vector<AnsatzEntry> ansatz_from(const json &j) {
    auto entry = [](const json &e) {
        AnsatzEntry a;
        if (e.contains("pencil_structure"))
            a.pencil_structure = structure_from(e.at("pencil_structure"));
        a.v = vector_from(field(e, "v"));
        return a;
    };
    std::vector<AnsatzEntry> out;
    if (j.is_object() && j.contains("ansatz")) {
        if (!j.at("ansatz").is_array())
            throw MalformedInput("ansatz must be an array");
        for (const json &e : j.at("ansatz"))
            out.push_back(entry(e));
    } else {
        out.push_back(entry(j));
    }
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomic(const std::filesystem::path &path, const std::string &content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace structbe::io
