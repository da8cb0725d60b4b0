#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "io.hpp"
#include "structbe/backerr.hpp"
#include "structbe/linearize.hpp"
#include "structbe/pseudospec.hpp"
#include "structbe/verify.hpp"

namespace fs = std::filesystem;
using namespace structbe;
using io::fmt;
using io::json;

namespace {

enum Exit { Ok = 0, VerifyFailed = 1, Malformed = 2, Mismatch = 3, Inadmissible = 4 };

struct Options {
    fs::path input, output, ansatz;
    std::string cls, norm = "both", region, grid = "100x100", scale = "small", mutate = "none";
    std::uint64_t seed = 42;
};

std::vector<NormKind> norms_from(const std::string &name) {
    if (name == "both")
        return {NormKind::Frobenius, NormKind::Spectral};
    if (name == "frobenius")
        return {NormKind::Frobenius};
    if (name == "spectral")
        return {NormKind::Spectral};
    throw io::MalformedInput("norm must be frobenius, spectral or both");
}

std::optional<StructureClass> class_from(const std::string &flag, const io::PolynomialDocument &doc) {
    if (flag.empty())
        return doc.structure;
    const auto s = parse_structure(flag);
    if (!s)
        throw io::MalformedInput("unknown class \"" + flag + "\"");
    return s;
}

io::PolynomialDocument load(const Options &o, std::optional<StructureClass> &cls) {
    auto doc = io::polynomial_from(io::read_json(o.input));
    for (std::size_t k : doc.renormalized)
        std::cerr << "warning: pair " << k << " has a non-unit eigenvector; it was renormalized\n";
    cls = class_from(o.cls, doc);
    if (cls)
        require_class(doc.poly, *cls);
    return doc;
}

int cmd_backerr(const Options &o) {
    std::optional<StructureClass> cls;
    const auto doc = load(o, cls);
    if (!cls)
        throw io::MalformedInput("backerr needs a class, from --class or the input's structure field");
    const auto kinds = norms_from(o.norm);

    json results = json::array();
    std::ostringstream csv;
    csv << "pair,lambda_re,lambda_im,class,norm,branch,eta,eta_structured\n";
    for (std::size_t k = 0; k < doc.pairs.size(); ++k) {
        const auto &pair = doc.pairs[k];
        json entry = {{"pair", k}, {"lambda", io::complex_to(pair.lambda())}, {"results", json::array()}};
        for (NormKind kind : kinds) {
            const auto r = eta_structured(doc.poly, *cls, pair, kind);
            entry["results"].push_back({{"eta", r.eta_unstructured},
                                        {"eta_structured", r.eta_structured},
                                        {"norm", to_string(kind)},
                                        {"branch", to_string(r.branch)},
                                        {"delta_p", io::polynomial_to(r.perturbation, *cls)}});
            csv << k << ',' << fmt(pair.lambda().real()) << ',' << fmt(pair.lambda().imag()) << ','
                << to_string(*cls) << ',' << to_string(kind) << ',' << to_string(r.branch) << ','
                << fmt(r.eta_unstructured) << ',' << fmt(r.eta_structured) << '\n';
        }
        results.push_back(std::move(entry));
    }
    fs::create_directories(o.output);
    io::write_atomic(o.output / "backerr.json", results.dump(2) + "\n");
    io::write_atomic(o.output / "backerr.csv", csv.str());
    std::cout << "backerr: " << doc.pairs.size() << " pairs written to " << o.output.string() << "\n";
    return Ok;
}

Pencil<double> pencil_for(const io::PolynomialDocument &doc, std::optional<StructureClass> cls,
                          const io::AnsatzEntry &a) {
    if (!a.pencil_structure)
        return dl_pencil(doc.poly, a.v);
    if (!cls)
        throw io::MalformedInput("a structured pencil needs the polynomial class");
    try {
        return structured_pencil(doc.poly, *cls, *a.pencil_structure, a.v);
    } catch (const InadmissibleAnsatz &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw InadmissibleAnsatz(e.what());
    }
}

int cmd_linearize(const Options &o) {
    std::optional<StructureClass> cls;
    const auto doc = load(o, cls);
    const auto kinds = norms_from(o.norm);
    auto entries = io::ansatz_from(io::read_json(o.ansatz));
    const int m = doc.poly.degree();
    for (auto &a : entries) {
        if (a.v.size() != m)
            throw io::MalformedInput("ansatz vectors need m entries");
        if (std::abs(a.v.norm() - 1.0) > 1e-8)
            std::cerr << "warning: ansatz vector renormalized to unit norm\n";
        a.v /= a.v.norm();
    }

    std::ostringstream csv;
    csv << "pair,lambda_re,lambda_im,ansatz,pencil_structure,norm,family,eta_poly,eta_pencil,ratio,lower,upper,"
           "within_bounds,recommended,rationale,r_h,r_s\n";
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const Pencil<double> l = pencil_for(doc, cls, entries[e]);
        const std::string pencil_name = entries[e].pencil_structure ? std::string(to_string(*entries[e].pencil_structure))
                                                                    : std::string("none");
        for (std::size_t k = 0; k < doc.pairs.size(); ++k) {
            const auto &pair = doc.pairs[k];
            std::string rec = "none", why = "unstructured", rh, rs;
            if (cls && !structured_pencil_classes(*cls).empty()) {
                const auto r = recommend_linearization(doc.poly, *cls, pair, entries[e].v);
                rec = to_string(r.pencil_class);
                why = r.rationale;
                if (r.r_h)
                    rh = fmt(*r.r_h);
                if (r.r_s)
                    rs = fmt(*r.r_s);
            }
            for (NormKind kind : kinds)
                for (const auto &r : ratio_reports(doc.poly, cls.value_or(StructureClass::Sym), l, pair, kind)) {
                    if (!cls && r.family != BoundFamily::Unstructured)
                        continue;
                    csv << k << ',' << fmt(pair.lambda().real()) << ',' << fmt(pair.lambda().imag()) << ',' << e
                        << ',' << pencil_name << ',' << to_string(kind) << ',' << to_string(r.family) << ','
                        << fmt(r.eta_poly) << ',' << fmt(r.eta_pencil) << ',' << fmt(r.ratio) << ','
                        << fmt(r.lower_bound) << ',' << fmt(r.upper_bound) << ','
                        << (r.within_bounds ? "true" : "false") << ',' << rec << ',' << why << ',' << rh << ','
                        << rs << '\n';
                }
        }
    }
    io::write_atomic(o.output, csv.str());
    std::cout << "linearize: " << entries.size() << " ansatz vectors, " << doc.pairs.size() << " pairs\n";
    return Ok;
}

GridRegion region_from(const std::string &text) {
    double v[4];
    char tail;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf%c", &v[0], &v[1], &v[2], &v[3], &tail) != 4)
        throw io::MalformedInput("region must be re_min,re_max,im_min,im_max");
    for (double x : v)
        if (!std::isfinite(x))
            throw io::MalformedInput("region bounds must be finite");
    if (!(v[0] < v[1]) || !(v[2] < v[3]))
        throw io::MalformedInput("region needs re_min < re_max and im_min < im_max");
    return {v[0], v[1], v[2], v[3]};
}

std::pair<int, int> grid_from(const std::string &text) {
    int nx = 0, ny = 0;
    char tail;
    if (std::sscanf(text.c_str(), "%dx%d%c", &nx, &ny, &tail) != 2 || nx < 1 || ny < 1)
        throw io::MalformedInput("grid must be NXxNY with positive counts");
    return {nx, ny};
}

int cmd_pseudospec(const Options &o) {
    std::optional<StructureClass> cls;
    const auto doc = load(o, cls);
    const GridRegion region = region_from(o.region);
    const auto [nx, ny] = grid_from(o.grid);
    const NormKind kind = norms_from(o.norm).front();

    const auto g = pseudospectrum_grid(doc.poly, region, nx, ny, cls, kind);
    std::ostringstream csv;
    csv << (g.structured_values ? "re,im,eta,eta_structured,flag\n" : "re,im,eta\n");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const auto z = g.node(i, j);
            const double eta = g.values(i, j);
            lo = std::min(lo, eta);
            hi = std::max(hi, eta);
            csv << fmt(z.real()) << ',' << fmt(z.imag()) << ',' << fmt(eta);
            if (g.structured_values) {
                const char *flag = g.underflow(i, j) ? "underflow" : (*g.bound_only)(i, j) ? "upper_bound" : "exact";
                csv << ',' << fmt((*g.structured_values)(i, j)) << ',' << flag;
            }
            csv << '\n';
        }
    io::write_atomic(o.output, csv.str());
    std::cout << "pseudospec: " << nx << "x" << ny << " nodes, eta min " << fmt(lo) << " max " << fmt(hi) << "\n";
    return Ok;
}

int cmd_verify(const Options &o) {
    VerifyConfig config;
    config.seed = o.seed;
    const auto scale = parse_scale(o.scale);
    const auto mutation = parse_mutation(o.mutate);
    if (!scale || !mutation)
        throw io::MalformedInput("unknown --scale or --mutate value");
    config.scale = *scale;
    config.mutation = *mutation;

    const auto start = std::chrono::steady_clock::now();
    const VerifyReport report = run_verify(config);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.output.empty()) {
        std::ostringstream csv;
        write_verify_csv(csv, report);
        io::write_atomic(o.output, csv.str());
    }
    const std::size_t bad = report.failures();
    std::cerr << "verify: " << report.rows.size() << " checks, " << bad << " failed, " << secs << " s\n";
    for (const auto &r : report.rows)
        if (!r.pass())
            std::cerr << "  FAIL " << r.structure << " n=" << r.n << " m=" << r.m << " " << r.name
                      << " rel_err=" << fmt(r.rel_err) << " tol=" << fmt(r.tolerance) << "\n";
    return bad == 0 ? Ok : VerifyFailed;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Structured backward errors, linearizations and pseudospectra of matrix polynomials"};
    app.require_subcommand(1);
    Options o;

    auto *be = app.add_subcommand("backerr", "structured and unstructured backward errors of eigenpairs");
    be->add_option("-i,--input", o.input, "polynomial JSON with pairs")->required();
    be->add_option("-o,--output", o.output, "output directory")->required();
    be->add_option("--class", o.cls, "structure class; defaults to the input's structure field");
    be->add_option("--norm", o.norm, "frobenius, spectral or both");

    auto *li = app.add_subcommand("linearize", "backward error ratios of structured linearizations");
    li->add_option("-i,--input", o.input, "polynomial JSON with pairs")->required();
    li->add_option("--ansatz", o.ansatz, "ansatz JSON")->required();
    li->add_option("-o,--output", o.output, "CSV report")->required();
    li->add_option("--class", o.cls, "polynomial structure class");
    li->add_option("--norm", o.norm, "frobenius, spectral or both");

    auto *ps = app.add_subcommand("pseudospec", "backward error of approximate eigenvalues over a grid");
    ps->add_option("-i,--input", o.input, "polynomial JSON")->required();
    ps->add_option("--region", o.region, "re_min,re_max,im_min,im_max")->required();
    ps->add_option("--grid", o.grid, "NXxNY");
    ps->add_option("--class", o.cls, "structure class for the structured column");
    ps->add_option("--norm", o.norm, "frobenius or spectral; both means spectral here");
    ps->add_option("-o,--output", o.output, "CSV grid")->required();

    auto *ve = app.add_subcommand("verify", "run the invariant battery");
    ve->add_option("--seed", o.seed, "random seed");
    ve->add_option("--scale", o.scale, "small or full");
    ve->add_option("--mutate", o.mutate, "none, conj_lambda or drop_sqrt2");
    ve->add_option("-o,--output", o.output, "CSV report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Malformed;
    }
    if (ps->parsed() && o.norm == "both")
        o.norm = "spectral";

    try {
        if (be->parsed())
            return cmd_backerr(o);
        if (li->parsed())
            return cmd_linearize(o);
        if (ps->parsed())
            return cmd_pseudospec(o);
        return cmd_verify(o);
    } catch (const StructureMismatch &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Mismatch;
    } catch (const InadmissibleAnsatz &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Inadmissible;
    } catch (const io::MalformedInput &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Malformed;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Malformed;
    }
}
