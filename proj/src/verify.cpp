#include "structbe/verify.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>
#include <thread>

#include <Eigen/SVD>

#include "structbe/linearize.hpp"
#include "structbe/oracle.hpp"
#include "structbe/pseudospec.hpp"
#include "structbe/random.hpp"

namespace structbe {

namespace {

using S = StructureClass;
using Poly = MatrixPolynomial<double>;
using Pair = EigenPairApprox<double>;

constexpr double kTiny = 1e-300;

double rel(double value, double reference) {
    const double d = std::abs(value - reference);
    return d == 0 ? 0 : d / std::max(std::abs(reference), kTiny);
}

// Backward errors of an exactly singular P(z) are roundoff-sized, so the relative error is
// taken against a floor.
double rel_floored(double value, double reference) {
    return std::abs(value - reference) / std::max(std::abs(reference), 1e-4);
}

double excess(double value, double bound) { return std::max(0.0, value - bound); }

struct Params {
    int instances;
    int max_n;
    int max_m;
};

Params params_for(VerifyScale s) {
    return s == VerifyScale::Small ? Params{50, 6, 5} : Params{200, 8, 6};
}

std::uint64_t task_seed(std::uint64_t seed, std::uint64_t task) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (task + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Collector {
  public:
    explicit Collector(std::vector<VerifyRow> &rows) : rows_(rows) {}

    void add(std::string_view cls, int n, int m, std::string name, double formula, double oracle, double rel_err,
             double tol) {
        rows_.push_back({std::string(cls), n, m, std::move(name), formula, oracle, rel_err, tol});
    }

  private:
    std::vector<VerifyRow> &rows_;
};

bool herm_family(S s) { return s == S::Herm || s == S::SkewHerm; }
bool heven_family(S s) { return s == S::HEven || s == S::HOdd || s == S::HamiltonianEO; }

Complex<double> sample_lambda(Sampler<double> &g, S s, int regime) {
    switch (regime) {
    case 1:
        if (herm_family(s))
            return {g.normal(), 0.0};
        if (heven_family(s))
            return {0.0, g.normal()};
        return g.complex_normal();
    case 2: return g.on_unit_circle();
    case 3: return g.log_radius(1e-2, 1e2);
    case 4: return s == S::TOdd ? Complex<double>(0.0) : g.in_annulus(0.5, 2.0);
    default: return g.complex_normal();
    }
}

int sample_dim(Sampler<double> &g, S s, int max_n) {
    if (s == S::HamiltonianEO)
        return 2 * g.integer(1, max_n / 2);
    return g.integer(2, max_n);
}

void check_backerr(Collector &c, Sampler<double> &g, const Poly &p, S s, const Pair &pair, Mutation mutation) {
    const std::string_view cls = to_string(s);
    const int n = int(p.dim()), m = p.degree();
    const Complex<double> lam = pair.lambda();

    const double eta = eta_unstructured(p, pair);
    const double eta_f = structured_value(p, s, pair, NormKind::Frobenius);
    const double eta_2 = structured_value(p, s, pair, NormKind::Spectral);

    double formula = eta_f;
    if (mutation == Mutation::ConjugateLambda)
        formula = structured_value(p, s, Pair(std::conj(lam), pair.x()), NormKind::Frobenius);
    else if (mutation == Mutation::DropSqrt2)
        formula = eta_2;
    const double oracle = frobenius_oracle(p, s, pair);
    c.add(cls, n, m, "frobenius_oracle", formula, oracle, rel(formula, oracle), 1e-10);

    c.add(cls, n, m, "chain_eta_le_spectral", eta, eta_2, excess(eta, eta_2) / std::max(eta_2, kTiny), 1e-13);
    c.add(cls, n, m, "chain_spectral_le_frobenius", eta_2, eta_f, excess(eta_2, eta_f) / std::max(eta_f, kTiny),
          1e-13);

    const LambdaBranch br = classify_lambda<double>(s, lam);
    const bool spectral_eq = s == S::Sym || s == S::SkewSym || (herm_family(s) && br == LambdaBranch::RealAxis) ||
                             (heven_family(s) && br == LambdaBranch::ImaginaryAxis);
    if (spectral_eq)
        c.add(cls, n, m, "equal_spectral_eta", eta_2, eta, rel(eta_2, eta), 1e-13);
    const bool unit = std::abs(std::abs(lam) - 1.0) <= 1e-12;
    if (s == S::SkewSym || ((s == S::TEven || s == S::TOdd) && m % 2 == 1 && unit))
        c.add(cls, n, m, "equal_frobenius_sqrt2_eta", eta_f, std::sqrt(2.0) * eta, rel(eta_f, std::sqrt(2.0) * eta),
              1e-13);

    const double pnorm = poly_norm(p, NormKind::Frobenius);
    const double wnorm = power_vector(lam, m, Ordering::Ascending).norm();
    for (NormKind kind : {NormKind::Frobenius, NormKind::Spectral}) {
        const std::string k(to_string(kind));
        const double claimed = kind == NormKind::Frobenius ? eta_f : eta_2;
        const Poly d = minimal_perturbation(p, s, pair, kind);
        const double dn = poly_norm(d, kind);
        c.add(cls, n, m, "attain_norm_" + k, claimed, dn, rel(dn, claimed), 1e-12);
        const double sd = structure_distance(d, s) / (1.0 + poly_norm(d, NormKind::Frobenius));
        c.add(cls, n, m, "attain_structure_" + k, 0.0, sd, sd, 1e-14);
        const double res = (evaluate(p + d, lam) * pair.x()).norm() / ((1.0 + pnorm) * wnorm);
        c.add(cls, n, m, "attain_residual_" + k, 0.0, res, res, 1e-12);

        double lowest = std::numeric_limits<double>::infinity();
        for (SampleFamily fam : {SampleFamily::Projector, SampleFamily::NullSpace})
            for (double v : feasible_sample(p, s, pair, kind, 5, g.next_seed(), fam))
                lowest = std::min(lowest, v);
        c.add(cls, n, m, "feasible_not_below_" + k, claimed, lowest,
              excess(claimed, lowest) / std::max(claimed, kTiny), 1e-10);
    }
}

void check_pseudospec(Collector &c, Sampler<double> &g, const Poly &p, S s, Complex<double> z) {
    const std::string_view cls = to_string(s);
    const int n = int(p.dim()), m = p.degree();
    const double eta = eta_eigenvalue(p, z);

    Eigen::JacobiSVD<MatrixC<double>> svd(evaluate(p, z), Eigen::ComputeFullV);
    const double at_vector = eta_unstructured(p, Pair(z, svd.matrixV().col(n - 1)));
    c.add(cls, n, m, "eigenvalue_singular_vector", eta, at_vector, rel_floored(at_vector, eta), 1e-10);

    const double scale = poly_norm(p, NormKind::Frobenius) * power_vector(z, m, Ordering::Ascending).norm();
    for (NormKind kind : {NormKind::Frobenius, NormKind::Spectral}) {
        const std::string k(to_string(kind));
        const Interval<double> iv = eta_eigenvalue_structured(p, s, z, kind);
        c.add(cls, n, m, "eigenvalue_interval_" + k, iv.lower, iv.upper,
              excess(iv.lower, iv.upper) / std::max(iv.upper, 1e-4), 1e-10);
        double sampled = std::numeric_limits<double>::infinity();
        for (int t = 0; t < 5; ++t)
            sampled = std::min(sampled, structured_value(p, s, Pair(z, g.unit_vector(n)), kind));
        c.add(cls, n, m, "eigenvalue_lower_bound_" + k, iv.lower, sampled,
              excess(iv.lower, sampled) / std::max(sampled, 1e-4), 1e-10);
        if (!iv.exact)
            continue;
        const Poly d = minimal_eigenvalue_perturbation(p, s, z, kind);
        const auto sv = Eigen::JacobiSVD<MatrixC<double>>(evaluate(p + d, z)).singularValues();
        const double sing = sv(sv.size() - 1) / scale;
        c.add(cls, n, m, "eigenvalue_perturbation_singular_" + k, 0.0, sing, sing, 1e-10);
        const double dn = poly_norm(d, kind);
        c.add(cls, n, m, "eigenvalue_perturbation_norm_" + k, iv.upper, dn, rel_floored(dn, iv.upper), 1e-10);
        const double sd = structure_distance(d, s) / (1.0 + poly_norm(d, NormKind::Frobenius));
        c.add(cls, n, m, "eigenvalue_perturbation_structure_" + k, 0.0, sd, sd, 1e-14);
    }
}

// Norm-relative error of the three pencil identities at (lambda, x).
void check_identities(Collector &c, std::string_view cls, const Poly &p, const Pencil<double> &l, const Pair &pair,
                      const std::string &tag) {
    const int n = int(p.dim()), m = p.degree();
    const Complex<double> lam = pair.lambda();
    const VectorC<double> big = power_vector(lam, m - 1, Ordering::Descending).entries;
    VectorC<double> y(m * n);
    for (int i = 0; i < m; ++i)
        y.segment(i * n, n) = big(i) * pair.x();
    const MatrixC<double> lz = lam * l.X + l.Y;
    const MatrixC<double> pz = evaluate(p, lam);
    const VectorC<double> ly = lz * y;
    const VectorC<double> px = pz * pair.x();
    const double scale = 1.0 + pz.norm() * big.squaredNorm() * l.v.norm();

    const double l1 = ly.norm(), r1 = l.v.norm() * px.norm();
    c.add(cls, n, m, tag + "_identity_norm", r1, l1, std::abs(l1 - r1) / scale, 1e-12);
    const double l2 = std::abs((y.transpose() * ly)(0));
    const double r2 = std::abs((big.transpose() * l.v)(0)) * std::abs((pair.x().transpose() * px)(0));
    c.add(cls, n, m, tag + "_identity_transpose", r2, l2, std::abs(l2 - r2) / scale, 1e-12);
    const double l3 = std::abs(y.dot(ly));
    const double r3 = std::abs(big.dot(l.v)) * std::abs(pair.x().dot(px));
    c.add(cls, n, m, tag + "_identity_adjoint", r3, l3, std::abs(l3 - r3) / scale, 1e-12);
}

void check_bounds(Collector &c, std::string_view cls, const Poly &p, S s, const Pencil<double> &l, const Pair &pair,
                  const std::string &tag) {
    const int n = int(p.dim()), m = p.degree();
    for (NormKind kind : {NormKind::Frobenius, NormKind::Spectral})
        for (const auto &r : ratio_reports(p, s, l, pair, kind)) {
            if (r.family == BoundFamily::TOddParity || !(r.eta_poly > 0))
                continue;
            const double violation = std::max(excess(r.lower_bound, r.ratio), excess(r.ratio, r.upper_bound));
            const double bound = r.ratio < r.lower_bound ? r.lower_bound : std::min(r.upper_bound, r.ratio);
            c.add(cls, n, m, tag + "_bound_" + std::string(to_string(r.family)) + "_" + std::string(to_string(kind)),
                  r.ratio, bound, violation, 1e-8);
        }
}

void check_linearize(Collector &c, Sampler<double> &g, const Poly &p, S s, const Pair &pair) {
    const std::string_view cls = to_string(s);
    const int n = int(p.dim()), m = p.degree();

    // A random member of L1(P): V nonsingular with unit first column v.
    MatrixC<double> vmat = g.matrix(m, m);
    vmat.col(0).normalize();
    const Pencil<double> l1 = l1_pencil(p, VectorC<double>(vmat.col(0)), vmat);
    check_identities(c, cls, p, l1, pair, "l1");
    check_bounds(c, cls, p, s, l1, pair, "l1");

    for (S pc : structured_pencil_classes(s)) {
        const auto v = g.ansatz_vector(s, pc, m);
        if (!v)
            continue;
        const Pencil<double> l = structured_pencil(p, s, pc, *v);
        const std::string tag = std::string(to_string(pc)) + "_pencil";
        const double sd = structure_distance(l.as_polynomial(), pc);
        c.add(cls, n, m, tag + "_structure", 0.0, sd, sd, 0.0);
        check_identities(c, cls, p, l, pair, tag);
        check_bounds(c, cls, p, s, l, pair, tag);
    }
}

std::vector<VerifyRow> class_task(S s, const Params &pr, std::uint64_t seed, Mutation mutation) {
    std::vector<VerifyRow> rows;
    Collector c(rows);
    Sampler<double> g(seed);
    for (int t = 0; t < pr.instances; ++t) {
        const int n = sample_dim(g, s, pr.max_n);
        const int m = g.integer(1, pr.max_m);
        const Poly p = g.structured(n, m, s);
        const Complex<double> lam = sample_lambda(g, s, t % 5);
        const Pair pair(lam, g.unit_vector(n));
        check_backerr(c, g, p, s, pair, mutation);
        check_pseudospec(c, g, p, s, sample_lambda(g, s, t % 5));
        if (s != S::HamiltonianEO && t % 2 == 0)
            check_linearize(c, g, p, s, pair);
    }
    return rows;
}

std::vector<VerifyRow> global_task(const Params &pr, std::uint64_t seed) {
    std::vector<VerifyRow> rows;
    Collector c(rows);
    Sampler<double> g(seed);
    const int count = pr.instances / 2;

    for (int t = 0; t < count; ++t) {
        const int n = g.integer(1, pr.max_n);
        const Poly p = g.polynomial(n, 2);
        VectorC<double> e1 = VectorC<double>::Zero(2);
        e1(0) = 1.0;
        const Pencil<double> l = dl_pencil(p, e1);
        MatrixC<double> x = MatrixC<double>::Zero(2 * n, 2 * n), y = x;
        x.topLeftCorner(n, n) = p[2];
        x.bottomRightCorner(n, n) = -p[0];
        y.topLeftCorner(n, n) = p[1];
        y.topRightCorner(n, n) = p[0];
        y.bottomLeftCorner(n, n) = p[0];
        const double err = ((l.X - x).norm() + (l.Y - y).norm()) / (1.0 + poly_norm(p, NormKind::Frobenius));
        c.add("-", n, 2, "dl_closed_form", 0.0, err, err, 1e-12);
    }

    for (int t = 0; t < count; ++t) {
        const auto d = g.dilation_instance(g.integer(1, 4), g.integer(1, 4), g.integer(1, 4), g.integer(1, 4));
        const MatrixC<double> dd = dkw_dilation(d.a, d.b, d.c, d.mu, d.z);
        MatrixC<double> full(d.a.rows() + d.b.rows(), d.a.cols() + d.c.cols());
        full << d.a, d.c, d.b, dd;
        const double nrm = spectral_norm<double>(full);
        c.add("-", int(full.rows()), 0, "dkw_dilation_norm", d.mu, nrm, rel(nrm, d.mu), 1e-10);
    }

    for (int t = 0; t < count; ++t) {
        const int n = g.integer(1, 8);
        const MatrixC<double> a = g.matrix(n, n);
        const MatrixC<double> sym = a + MatrixC<double>(a.transpose());
        const auto tk = takagi<double>(sym);
        const double e1 = (takagi_reconstruct(tk) - sym).norm() / sym.norm();
        c.add("sym", n, 0, "takagi_reconstruction", 0.0, e1, e1, 1e-10);
        const double u1 = (tk.U.adjoint() * tk.U - MatrixC<double>::Identity(n, n)).norm();
        c.add("sym", n, 0, "takagi_unitary", 0.0, u1, u1, 1e-12);

        const int k = 2 * g.integer(1, 4);
        const MatrixC<double> b = g.matrix(k, k);
        const MatrixC<double> skew = b - MatrixC<double>(b.transpose());
        const auto ts = takagi_skew<double>(skew);
        const double e2 = (takagi_reconstruct(ts) - skew).norm() / skew.norm();
        c.add("skew_sym", k, 0, "takagi_reconstruction", 0.0, e2, e2, 1e-10);
        const double u2 = (ts.U.adjoint() * ts.U - MatrixC<double>::Identity(k, k)).norm();
        c.add("skew_sym", k, 0, "takagi_unitary", 0.0, u2, u2, 1e-12);
    }

    for (int t = 0; t < 4 * count; ++t) {
        const int m = g.integer(1, 8);
        const Complex<double> lam = g.log_radius(1e-3, 1e3);
        const double q = power_vector(lam, m, Ordering::Ascending).norm() /
                         (power_vector(lam, m - 1, Ordering::Ascending).norm() * std::hypot(std::abs(lam), 1.0));
        const double lo = std::sqrt(double(m + 1) / double(2 * m));
        c.add("-", 0, m, "power_vector_ratio", lo, q, std::max(excess(lo, q), excess(q, 1.0)), 1e-14);
    }
    return rows;
}

} // namespace

std::optional<VerifyScale> parse_scale(std::string_view name) {
    if (name == "small")
        return VerifyScale::Small;
    if (name == "full")
        return VerifyScale::Full;
    return std::nullopt;
}

std::optional<Mutation> parse_mutation(std::string_view name) {
    if (name == "none")
        return Mutation::None;
    if (name == "conj_lambda")
        return Mutation::ConjugateLambda;
    if (name == "drop_sqrt2")
        return Mutation::DropSqrt2;
    return std::nullopt;
}

std::size_t VerifyReport::failures() const {
    std::size_t k = 0;
    for (const auto &r : rows)
        k += r.pass() ? 0 : 1;
    return k;
}

VerifyReport run_verify(const VerifyConfig &config) {
    const Params pr = params_for(config.scale);
    constexpr std::size_t classes = std::size(kAllClasses);
    std::vector<std::vector<VerifyRow>> parts(classes + 1);
    std::vector<std::exception_ptr> errors(classes + 1);

    auto task = [&](std::size_t i) {
        try {
            if (i < classes)
                parts[i] = class_task(kAllClasses[i], pr, task_seed(config.seed, i), config.mutation);
            else
                parts[i] = global_task(pr, task_seed(config.seed, i));
        } catch (...) {
            errors[i] = std::current_exception();
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(config.threads ? config.threads : thread_budget(),
                                                             unsigned(classes + 1)));
    if (workers == 1) {
        for (std::size_t i = 0; i <= classes; ++i)
            task(i);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i <= classes; i += workers)
                    task(i);
            });
        for (auto &th : pool)
            th.join();
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);

    VerifyReport report;
    for (auto &part : parts)
        report.rows.insert(report.rows.end(), part.begin(), part.end());
    return report;
}

void write_verify_csv(std::ostream &out, const VerifyReport &report) {
    out << "class,n,m,case,formula,oracle,rel_err\n";
    char buf[96];
    for (const auto &r : report.rows) {
        out << r.structure << ',' << r.n << ',' << r.m << ',' << r.name;
        for (double v : {r.formula, r.oracle, r.rel_err}) {
            std::snprintf(buf, sizeof buf, ",%.17g", v);
            out << buf;
        }
        out << '\n';
    }
}

} // namespace structbe
