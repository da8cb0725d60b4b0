#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "structbe/impl/backerr.tpp"
#include "structbe/linearize.hpp"

namespace structbe {

namespace detail {

template <typename Real> MatrixC<Real> kron(const MatrixC<Real> &a, const MatrixC<Real> &b) {
    MatrixC<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index k = 0; k < a.cols(); ++k)
            out.block(i * b.rows(), k * b.cols(), b.rows(), b.cols()) = a(i, k) * b;
    return out;
}

template <typename Real> std::vector<Complex<Real>> sample_points(int m, int attempt) {
    std::vector<Complex<Real>> pts;
    const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
    const Real jitter = Real(0.37) * Real(attempt) / Real(m + 1);
    for (int k = 0; k <= m; ++k)
        pts.push_back(std::polar(Real(1), two_pi * (Real(k) + jitter) / Real(m + 1)));
    return pts;
}

// Real-linear constraint F(X, Y) = 0 on scalar m x m matrices X, Y (F affine).
template <typename Real>
using ScalarMap = std::function<VectorC<Real>(const MatrixC<Real> &, const MatrixC<Real> &)>;

template <typename Real> struct ScalarSolution {
    MatrixC<Real> x, y;
    Real residual;
    bool full_rank;
};

// Stacks the affine maps into a real system over [re X, im X, re Y, im Y] and solves it with
// minimum norm.
template <typename Real> ScalarSolution<Real> solve_scalar(int m, const std::vector<ScalarMap<Real>> &maps) {
    const Index mm = Index(m) * m;
    const Index nu = 4 * mm;
    const MatrixC<Real> zero = MatrixC<Real>::Zero(m, m);
    auto unpack = [&](const VectorR<Real> &u, MatrixC<Real> &x, MatrixC<Real> &y) {
        x.resize(m, m);
        y.resize(m, m);
        for (Index k = 0; k < mm; ++k) {
            x(k % m, k / m) = Complex<Real>(u(k), u(mm + k));
            y(k % m, k / m) = Complex<Real>(u(2 * mm + k), u(3 * mm + k));
        }
    };
    std::vector<VectorC<Real>> constants;
    Index rows = 0;
    for (const auto &f : maps) {
        constants.push_back(f(zero, zero));
        rows += 2 * constants.back().size();
    }
    MatrixR<Real> a(rows, nu);
    VectorR<Real> b(rows);
    for (Index k = 0; k <= nu; ++k) {
        MatrixC<Real> x = zero, y = zero;
        if (k < nu) {
            VectorR<Real> u = VectorR<Real>::Zero(nu);
            u(k) = Real(1);
            unpack(u, x, y);
        }
        Index row = 0;
        for (size_t i = 0; i < maps.size(); ++i) {
            const Index len = constants[i].size();
            if (k < nu) {
                const VectorC<Real> col = maps[i](x, y) - constants[i];
                a.block(row, k, len, 1) = col.real();
                a.block(row + len, k, len, 1) = col.imag();
            } else {
                b.segment(row, len) = -constants[i].real();
                b.segment(row + len, len) = -constants[i].imag();
            }
            row += 2 * len;
        }
    }
    Eigen::CompleteOrthogonalDecomposition<MatrixR<Real>> cod;
    cod.setThreshold(Real(1e-13));
    cod.compute(a);
    const VectorR<Real> u = cod.solve(b);
    ScalarSolution<Real> out;
    unpack(u, out.x, out.y);
    out.residual = (a * u - b).norm() / (Real(1) + b.norm());
    out.full_rank = cod.rank() == nu;
    return out;
}

template <typename Real> VectorC<Real> descending_powers(Complex<Real> z, int m) {
    return power_vector(z, m - 1, Ordering::Descending).entries;
}

template <typename Real>
ScalarMap<Real> right_identity(Complex<Real> mu, int j, const VectorC<Real> &v) {
    const int m = static_cast<int>(v.size());
    const VectorC<Real> lam = descending_powers(mu, m);
    const VectorC<Real> rhs = std::pow(mu, j) * v;
    return [=](const MatrixC<Real> &x, const MatrixC<Real> &y) -> VectorC<Real> {
        return (mu * x + y) * lam - rhs;
    };
}

template <typename Real>
ScalarMap<Real> left_identity(Complex<Real> mu, int j, const VectorC<Real> &v) {
    const int m = static_cast<int>(v.size());
    const VectorC<Real> lam = descending_powers(mu, m);
    const VectorC<Real> rhs = std::pow(mu, j) * v;
    return [=](const MatrixC<Real> &x, const MatrixC<Real> &y) -> VectorC<Real> {
        return ((mu * x + y).transpose() * lam - rhs).eval();
    };
}

// B^T = sign B (transpose) or B^H = sign B, applied to X and Y with their own signs.
template <typename Real> ScalarMap<Real> pattern_identity(int sign_x, int sign_y, bool transpose) {
    return [=](const MatrixC<Real> &x, const MatrixC<Real> &y) -> VectorC<Real> {
        const Index m = x.rows();
        MatrixC<Real> dx = (transpose ? MatrixC<Real>(x.transpose()) : MatrixC<Real>(x.adjoint())) - Real(sign_x) * x;
        MatrixC<Real> dy = (transpose ? MatrixC<Real>(y.transpose()) : MatrixC<Real>(y.adjoint())) - Real(sign_y) * y;
        VectorC<Real> out(2 * m * m);
        out << Eigen::Map<VectorC<Real>>(dx.data(), m * m), Eigen::Map<VectorC<Real>>(dy.data(), m * m);
        return out;
    };
}

template <typename Real>
Pencil<Real> assemble(const MatrixPolynomial<Real> &p, const std::vector<MatrixC<Real>> &xs,
                      const std::vector<MatrixC<Real>> &ys, const VectorC<Real> &v) {
    const Index n = p.dim();
    const int m = p.degree();
    Pencil<Real> l;
    l.X = MatrixC<Real>::Zero(m * n, m * n);
    l.Y = MatrixC<Real>::Zero(m * n, m * n);
    for (int j = 0; j <= m; ++j) {
        l.X += kron<Real>(xs[static_cast<size_t>(j)], p[j]);
        l.Y += kron<Real>(ys[static_cast<size_t>(j)], p[j]);
    }
    l.v = v;
    l.block_size = n;
    l.poly_degree = m;
    return l;
}

template <typename Real> Real membership_scale(const MatrixPolynomial<Real> &p) {
    return Real(1) + poly_norm(p, NormKind::Frobenius);
}

template <typename Real> void check_membership(const MatrixPolynomial<Real> &p, const Pencil<Real> &l) {
    const Complex<Real> z(Real(0.3), Real(-0.7));
    if (membership_residual(p, l, z) > Real(1e-10) * membership_scale(p) * (Real(1) + l.v.norm()))
        throw std::logic_error("assembled pencil fails the right ansatz identity");
}

} // namespace detail

template <typename Real> VectorR<Real> sigma_diagonal(int m) {
    VectorR<Real> s(m);
    for (int i = 0; i < m; ++i)
        s(i) = ((m - 1 - i) % 2 == 0) ? Real(1) : Real(-1);
    return s;
}

template <typename Real> Pencil<Real> companion_first(const MatrixPolynomial<Real> &p) {
    const int m = p.degree();
    const Index n = p.dim();
    if (m < 1)
        throw std::invalid_argument("companion form needs degree at least 1");
    if (p[m].norm() == Real(0))
        throw std::invalid_argument("companion form needs a nonzero leading coefficient");
    Pencil<Real> l;
    l.X = MatrixC<Real>::Identity(m * n, m * n);
    l.X.topLeftCorner(n, n) = p[m];
    l.Y = MatrixC<Real>::Zero(m * n, m * n);
    for (int k = 0; k < m; ++k)
        l.Y.block(0, k * n, n, n) = p[m - 1 - k];
    for (int i = 1; i < m; ++i)
        l.Y.block(i * n, (i - 1) * n, n, n) = -MatrixC<Real>::Identity(n, n);
    l.v = VectorC<Real>::Zero(m);
    l.v(0) = Complex<Real>(1);
    l.block_size = n;
    l.poly_degree = m;
    return l;
}

template <typename Real>
Pencil<Real> l1_pencil(const MatrixPolynomial<Real> &p, const VectorC<Real> &v, const MatrixC<Real> &vmat) {
    const int m = p.degree();
    if (vmat.rows() != m || vmat.cols() != m || v.size() != m)
        throw std::invalid_argument("l1_pencil: V must be m x m and v of length m");
    if (Eigen::FullPivLU<MatrixC<Real>>(vmat).rank() < m)
        throw std::invalid_argument("l1_pencil: V is singular");
    if ((vmat.col(0) - v).norm() > Real(1e-12) * (Real(1) + v.norm()))
        throw std::invalid_argument("l1_pencil: first column of V must equal v");
    Pencil<Real> c = companion_first(p);
    const MatrixC<Real> k = detail::kron<Real>(vmat, MatrixC<Real>::Identity(p.dim(), p.dim()));
    c.X = k * c.X;
    c.Y = k * c.Y;
    c.v = v;
    return c;
}

template <typename Real> Pencil<Real> dl_pencil(const MatrixPolynomial<Real> &p, const VectorC<Real> &v) {
    const int m = p.degree();
    if (m < 1 || v.size() != m)
        throw std::invalid_argument("dl_pencil: need degree >= 1 and v of length m");
    std::vector<MatrixC<Real>> xs, ys;
    for (int j = 0; j <= m; ++j) {
        std::optional<detail::ScalarSolution<Real>> sol;
        for (int attempt = 0; attempt < 5 && !sol; ++attempt) {
            std::vector<detail::ScalarMap<Real>> maps;
            for (const auto &mu : detail::sample_points<Real>(m, attempt)) {
                maps.push_back(detail::right_identity<Real>(mu, j, v));
                maps.push_back(detail::left_identity<Real>(mu, j, v));
            }
            auto s = detail::solve_scalar<Real>(m, maps);
            if (s.full_rank)
                sol = std::move(s);
        }
        if (!sol || sol->residual > Real(1e-10))
            throw std::logic_error("dl_pencil: two-sided ansatz system is inconsistent");
        // Scalar double-ansatz pencils are symmetric.
        xs.push_back(symmetric_part<Real>(sol->x, 1, true));
        ys.push_back(symmetric_part<Real>(sol->y, 1, true));
    }
    Pencil<Real> l = detail::assemble(p, xs, ys, v);
    detail::check_membership(p, l);
    return l;
}

template <typename Real>
std::optional<Pencil<Real>> try_structured_pencil(const MatrixPolynomial<Real> &p, StructureClass poly_class,
                                             StructureClass pencil_class, const VectorC<Real> &v) {
    const int m = p.degree();
    const bool transpose = is_transpose_family(pencil_class);
    if (poly_class == StructureClass::HamiltonianEO || pencil_class == StructureClass::HamiltonianEO)
        throw std::invalid_argument("Hamiltonian pencils are not supported");
    if (transpose != is_transpose_family(poly_class))
        throw std::invalid_argument("pencil and polynomial classes must use the same transpose");
    const int sx = coefficient_sign(pencil_class, 1);
    const int sy = coefficient_sign(pencil_class, 0);
    std::vector<MatrixC<Real>> xs, ys;
    for (int j = 0; j <= m; ++j) {
        const int eps = coefficient_sign(poly_class, j);
        std::vector<detail::ScalarMap<Real>> maps;
        for (const auto &mu : detail::sample_points<Real>(m, 0))
            maps.push_back(detail::right_identity<Real>(mu, j, v));
        maps.push_back(detail::pattern_identity<Real>(sx * eps, sy * eps, transpose));
        auto sol = detail::solve_scalar<Real>(m, maps);
        if (sol.residual > Real(1e-10))
            return std::nullopt;
        xs.push_back(symmetric_part<Real>(sol.x, sx * eps, transpose));
        ys.push_back(symmetric_part<Real>(sol.y, sy * eps, transpose));
    }
    Pencil<Real> l = detail::assemble(p, xs, ys, v);
    l.declared_structure = pencil_class;
    detail::check_membership(p, l);
    return l;
}

template <typename Real>
Pencil<Real> structured_pencil(const MatrixPolynomial<Real> &p, StructureClass poly_class, StructureClass pencil_class,
                               const VectorC<Real> &v) {
    if (v.size() != p.degree())
        throw std::invalid_argument("ansatz vector must have length m");
    if (!admissible_ansatz<Real>(poly_class, pencil_class, v, p.degree()))
        throw InadmissibleAnsatz("ansatz vector is not admissible for a " + std::string(to_string(pencil_class)) +
                                 " linearization of a " + std::string(to_string(poly_class)) + " polynomial");
    auto l = try_structured_pencil(p, poly_class, pencil_class, v);
    if (!l)
        throw std::logic_error("structured_pencil: admissible ansatz vector gave an inconsistent system");
    return *l;
}

template <typename Real>
Real membership_residual(const MatrixPolynomial<Real> &p, const Pencil<Real> &l, Complex<Real> z) {
    const Index n = p.dim();
    const int m = p.degree();
    const MatrixC<Real> lam = detail::descending_powers(z, m);
    const MatrixC<Real> lhs = (z * l.X + l.Y) * detail::kron<Real>(lam, MatrixC<Real>::Identity(n, n));
    const MatrixC<Real> rhs = detail::kron<Real>(MatrixC<Real>(l.v), evaluate(p, z));
    return (lhs - rhs).norm();
}

template <typename Real>
Real left_membership_residual(const MatrixPolynomial<Real> &p, const Pencil<Real> &l, Complex<Real> z) {
    const Index n = p.dim();
    const int m = p.degree();
    const MatrixC<Real> lam = detail::descending_powers(z, m).transpose();
    const MatrixC<Real> lhs = detail::kron<Real>(lam, MatrixC<Real>::Identity(n, n)) * (z * l.X + l.Y);
    const MatrixC<Real> rhs = detail::kron<Real>(MatrixC<Real>(l.v.transpose()), evaluate(p, z));
    return (lhs - rhs).norm();
}

template <typename Real>
bool admissible_ansatz(StructureClass poly_class, StructureClass pencil_class, const VectorC<Real> &v, int m) {
    using S = StructureClass;
    if (v.size() != m)
        throw std::invalid_argument("ansatz vector must have length m");
    const Real tol(1e-12);
    const VectorC<Real> sv = sigma_diagonal<Real>(m).template cast<Complex<Real>>().cwiseProduct(v);
    auto close = [&](const VectorC<Real> &a, const VectorC<Real> &b) { return (a - b).cwiseAbs().maxCoeff() <= tol; };
    auto real = [&] { return v.imag().cwiseAbs().maxCoeff() <= tol; };
    auto imag = [&] { return v.real().cwiseAbs().maxCoeff() <= tol; };
    const VectorC<Real> vb = v.conjugate();
    switch (poly_class) {
    case S::Sym:
        if (pencil_class == S::Sym) return true;
        break;
    case S::SkewSym:
        if (pencil_class == S::SkewSym) return true;
        break;
    case S::TEven:
        if (pencil_class == S::TEven) return close(sv, v);
        if (pencil_class == S::TOdd) return close(sv, -v);
        break;
    case S::TOdd:
        if (pencil_class == S::TEven) return close(sv, -v);
        if (pencil_class == S::TOdd) return close(sv, v);
        break;
    case S::Herm:
        if (pencil_class == S::Herm) return real();
        if (pencil_class == S::SkewHerm) return imag();
        break;
    case S::SkewHerm:
        if (pencil_class == S::Herm) return imag();
        if (pencil_class == S::SkewHerm) return real();
        break;
    case S::HEven:
        if (pencil_class == S::HEven) return close(sv, vb);
        if (pencil_class == S::HOdd) return close(sv, -vb);
        break;
    case S::HOdd:
        if (pencil_class == S::HEven) return close(sv, -vb);
        if (pencil_class == S::HOdd) return close(sv, vb);
        break;
    default: break;
    }
    throw std::invalid_argument("no structured linearization is defined for a " + std::string(to_string(pencil_class)) +
                                " pencil of a " + std::string(to_string(poly_class)) + " polynomial");
}

template <typename Real> EigenPairApprox<Real> lift(const EigenPairApprox<Real> &pair, int m) {
    const MatrixC<Real> lam = detail::descending_powers(pair.lambda(), m);
    VectorC<Real> y = detail::kron<Real>(lam, MatrixC<Real>(pair.x()));
    y /= y.norm();
    return EigenPairApprox<Real>(pair.lambda(), std::move(y));
}

template <typename Real> Real eta_pencil(const Pencil<Real> &l, const EigenPairApprox<Real> &pair) {
    if (pair.x().size() != l.block_size)
        throw std::invalid_argument("eigenvector length does not match the pencil block size");
    return eta_unstructured(l.as_polynomial(), lift(pair, l.poly_degree));
}

template <typename Real>
BackwardErrorResult<Real> eta_pencil_structured(const Pencil<Real> &l, StructureClass pencil_class,
                                                const EigenPairApprox<Real> &pair, NormKind kind) {
    if (pair.x().size() != l.block_size)
        throw std::invalid_argument("eigenvector length does not match the pencil block size");
    return eta_structured(l.as_polynomial(), pencil_class, lift(pair, l.poly_degree), kind);
}

namespace detail {

template <typename Real>
RatioReport<Real> make_report(BoundFamily f, NormKind kind, Real poly, Real pencil, Real lo, Real hi) {
    const Real tol(1e-8);
    RatioReport<Real> r{f, kind, poly, pencil, std::numeric_limits<Real>::quiet_NaN(), lo, hi, false};
    if (poly > Real(0)) {
        r.ratio = pencil / poly;
        r.within_bounds = r.ratio >= lo - tol && r.ratio <= hi + tol;
    } else {
        r.within_bounds = pencil <= tol;
    }
    return r;
}

} // namespace detail

template <typename Real>
std::vector<RatioReport<Real>> ratio_reports(const MatrixPolynomial<Real> &p, StructureClass poly_class,
                                             const Pencil<Real> &l, const EigenPairApprox<Real> &pair, NormKind kind) {
    using S = StructureClass;
    if (std::abs(l.v.norm() - Real(1)) > Real(1e-8))
        throw std::invalid_argument("ratio bounds assume a unit-norm ansatz vector");
    const int m = p.degree();
    const Complex<Real> lam = pair.lambda();
    const Real a = std::abs(lam);
    const Real inf = std::numeric_limits<Real>::infinity();
    const Real lo = std::sqrt(Real(m + 1) / Real(2 * m));
    const Real sqrt2 = std::sqrt(Real(2));
    const bool frob = kind == NormKind::Frobenius;

    std::vector<RatioReport<Real>> out;
    const Real eta_p = eta_unstructured(p, pair);
    out.push_back(detail::make_report(BoundFamily::Unstructured, kind, eta_p, eta_pencil(l, pair), lo, Real(1)));
    if (!l.declared_structure)
        return out;

    const S lc = *l.declared_structure;
    const Real eta_sl = eta_pencil_structured(l, lc, pair, kind).eta_structured;
    const Real eta_sp = structured_value(p, poly_class, pair, kind);
    out.push_back(detail::make_report(BoundFamily::StructuredLower, kind, eta_p, eta_sl, lo, inf));

    const LambdaBranch br = classify_lambda<Real>(poly_class, lam);
    switch (poly_class) {
    case S::Sym:
        if (lc == S::Sym)
            out.push_back(detail::make_report(BoundFamily::SymmetricPair, kind, eta_sp, eta_sl, lo, frob ? sqrt2 : Real(1)));
        break;
    case S::SkewSym:
        if (lc == S::SkewSym)
            out.push_back(detail::make_report(BoundFamily::SkewSymmetricPair, kind, eta_sp, eta_sl, lo, Real(1)));
        break;
    case S::TEven: {
        const bool small = lc == S::TEven && a <= Real(1);
        const bool large = lc == S::TOdd && a >= Real(1);
        if (small || large)
            out.push_back(detail::make_report(BoundFamily::TEvenParity, kind, eta_p, eta_sl, lo, sqrt2));
        if (!frob) {
            const Real quarter = std::sqrt(Real(m + 1) / Real(4 * m));
            if (small)
                out.push_back(detail::make_report(BoundFamily::TEvenSpectral, kind, eta_sp, eta_sl, quarter, sqrt2));
            if (large) {
                const Real low = m % 2 == 0 ? quarter : lo / std::sqrt(Real(1) + a * a);
                out.push_back(detail::make_report(BoundFamily::TEvenSpectral, kind, eta_sp, eta_sl, low, sqrt2));
            }
        }
        break;
    }
    case S::TOdd: {
        if ((lc == S::TOdd && a <= Real(1)) || (lc == S::TEven && a >= Real(1)))
            out.push_back(detail::make_report(BoundFamily::TOddParity, kind, eta_p, eta_sl, lo, sqrt2));
        if (!frob) {
            if (lc == S::TOdd && a <= Real(1))
                out.push_back(detail::make_report(BoundFamily::TOddSpectral, kind, eta_sp, eta_sl,
                                                  std::sqrt(Real(m + 1) / Real(6 * m)), Real(1)));
            if (a >= Real(1) && m % 2 == 0 && lc == S::TEven)
                out.push_back(detail::make_report(BoundFamily::TOddSpectral, kind, eta_sp, eta_sl,
                                                  std::sqrt(Real(m + 1) / Real(m)) / std::sqrt(Real(2) + a * a),
                                                  Real(1)));
            if (a >= Real(1) && m % 2 == 1 && lc == S::TOdd)
                out.push_back(detail::make_report(BoundFamily::TOddSpectral, kind, eta_sp, eta_sl,
                                                  std::sqrt(Real(m + 1) / Real(4 * m)), Real(1)));
        }
        break;
    }
    case S::Herm:
    case S::SkewHerm:
        if (br == LambdaBranch::RealAxis && (lc == S::Herm || lc == S::SkewHerm))
            out.push_back(detail::make_report(BoundFamily::HermitianRealAxis, kind, eta_sp, eta_sl, lo, frob ? sqrt2 : Real(1)));
        break;
    case S::HEven:
    case S::HOdd:
        if (br == LambdaBranch::ImaginaryAxis && (lc == S::HEven || lc == S::HOdd))
            out.push_back(detail::make_report(BoundFamily::HEvenImaginaryAxis, kind, eta_sp, eta_sl, lo, frob ? sqrt2 : Real(1)));
        break;
    default: break;
    }
    return out;
}

template <typename Real> std::pair<VectorR<Real>, VectorR<Real>> advisory_vectors(Complex<Real> lambda, Complex<Real> s) {
    MatrixR<Real> h(2, 2), k(2, 2);
    h << Real(1), lambda.real(), Real(0), lambda.imag();
    k << Real(1), -lambda.imag(), Real(0), lambda.real();
    VectorR<Real> rhs(2);
    rhs << s.real(), s.imag();
    return {pinv_solve<Real>(h, rhs), pinv_solve<Real>(k, rhs)};
}

template <typename Real> Recommendation<Real> recommend_linearization(StructureClass poly_class, Complex<Real> lambda, int m) {
    using S = StructureClass;
    const Real a = std::abs(lambda);
    const LambdaBranch br = classify_lambda<Real>(poly_class, lambda);
    switch (poly_class) {
    case S::Sym: return {S::Sym, "same_structure", {}, {}};
    case S::SkewSym: return {S::SkewSym, "same_structure", {}, {}};
    case S::TEven:
        return a <= Real(1) ? Recommendation<Real>{S::TEven, "abs_lambda_le_1", {}, {}}
                            : Recommendation<Real>{S::TOdd, "abs_lambda_gt_1", {}, {}};
    case S::TOdd:
        if (a >= Real(1) && m % 2 == 0)
            return {S::TEven, "abs_lambda_ge_1_even_degree", {}, {}};
        return {S::TOdd, a < Real(1) ? "abs_lambda_lt_1" : "odd_degree", {}, {}};
    case S::Herm:
    case S::SkewHerm:
        if (br == LambdaBranch::RealAxis)
            return {poly_class == S::Herm ? S::Herm : S::SkewHerm, "real_axis", {}, {}};
        return {poly_class == S::Herm ? S::Herm : S::SkewHerm, "compare_rh_rs", {}, {}};
    case S::HEven:
    case S::HOdd:
        if (br == LambdaBranch::ImaginaryAxis)
            return {poly_class, "imaginary_axis", {}, {}};
        return {poly_class, "compare_rh_rs", {}, {}};
    default: throw std::invalid_argument("no structured linearization is available for this class");
    }
}

template <typename Real>
Recommendation<Real> recommend_linearization(const MatrixPolynomial<Real> &p, StructureClass poly_class,
                                             const EigenPairApprox<Real> &pair, const VectorC<Real> &v) {
    using S = StructureClass;
    Recommendation<Real> rec = recommend_linearization<Real>(poly_class, pair.lambda(), p.degree());
    if (rec.rationale != "compare_rh_rs")
        return rec;
    const VectorC<Real> lam = detail::descending_powers(pair.lambda(), p.degree());
    const Complex<Real> s = lam.dot(v) * (pair.x().adjoint() * evaluate(p, pair.lambda()) * pair.x())(0, 0);
    const auto [rh, rs] = advisory_vectors<Real>(pair.lambda(), s);
    rec.r_h = rh.norm();
    rec.r_s = rs.norm();
    const bool herm_family = poly_class == S::Herm || poly_class == S::SkewHerm;
    if (herm_family)
        rec.pencil_class = *rec.r_h <= *rec.r_s ? S::Herm : S::SkewHerm;
    else
        rec.pencil_class = *rec.r_s <= *rec.r_h ? S::HEven : S::HOdd;
    return rec;
}

} // namespace structbe
