#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <thread>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "structbe/impl/backerr.tpp"
#include "structbe/pseudospec.hpp"

namespace structbe {

namespace detail {

template <typename Real> Real symmetry_defect(const MatrixC<Real> &a, int sign) {
    return (a - Real(sign) * MatrixC<Real>(a.transpose())).norm();
}

// Orthonormal basis of the complement of the columns of u (n x k, orthonormal).
template <typename Real> MatrixC<Real> complement(const MatrixC<Real> &u, Index n) {
    if (u.cols() == 0)
        return MatrixC<Real>::Identity(n, n);
    Eigen::HouseholderQR<MatrixC<Real>> qr(u);
    const MatrixC<Real> q = qr.householderQ() * MatrixC<Real>::Identity(n, n);
    return q.rightCols(n - u.cols());
}

template <typename Real> bool on_unit_circle(Complex<Real> z) {
    return std::abs(std::abs(z) - Real(1)) <= Real(1e-12) * (Real(1) + std::abs(z));
}

template <typename Real> Complex<Real> snap(Complex<Real> z, LambdaBranch b) {
    if (b == LambdaBranch::RealAxis)
        return {z.real(), Real(0)};
    if (b == LambdaBranch::ImaginaryAxis)
        return {Real(0), z.imag()};
    return z;
}

// Herm base class on the real axis, H-even base class on the imaginary axis: P(z) is Hermitian.
template <typename Real>
MatrixPolynomial<Real> hermitian_axis_perturbation(const MatrixPolynomial<Real> &q, StructureClass base, Complex<Real> z) {
    MatrixC<Real> h = evaluate(q, z);
    h = (h + MatrixC<Real>(h.adjoint())) / Real(2);
    Eigen::SelfAdjointEigenSolver<MatrixC<Real>> es(h);
    Index k = 0;
    es.eigenvalues().cwiseAbs().minCoeff(&k);
    const Real mu = es.eigenvalues()(k);
    const VectorC<Real> u = es.eigenvectors().col(k);
    const Real w2 = power_vector(z, q.degree(), Ordering::Ascending).norm();
    const MatrixC<Real> uu = u * u.adjoint();
    MatrixPolynomial<Real> d = q.map([&](int j, const MatrixC<Real> &) -> MatrixC<Real> {
        return (-std::pow(std::conj(z), j) * mu / (w2 * w2)) * uu;
    });
    return project_to_class(d, base);
}

} // namespace detail

template <typename Real> Real eta_eigenvalue(const MatrixPolynomial<Real> &p, Complex<Real> z) {
    const MatrixC<Real> pz = evaluate(p, z);
    const auto sv = Eigen::JacobiSVD<MatrixC<Real>>(pz).singularValues();
    return sv(sv.size() - 1) / power_vector(z, p.degree(), Ordering::Ascending).norm();
}

template <typename Real>
Interval<Real> eta_eigenvalue_structured(const MatrixPolynomial<Real> &p, StructureClass s, Complex<Real> z,
                                         NormKind kind) {
    using S = StructureClass;
    require_class(p, s);
    const LambdaBranch br = classify_lambda<Real>(s, z);
    const Real eta = eta_eigenvalue(p, detail::snap(z, br));
    const bool frob = kind == NormKind::Frobenius;
    auto exact = [](Real v) { return Interval<Real>{v, v, true}; };
    switch (s) {
    case S::Sym: return exact(eta);
    case S::SkewSym: return exact(frob ? std::sqrt(Real(2)) * eta : eta);
    case S::TEven:
    case S::TOdd:
        if (frob && p.degree() % 2 == 1 && detail::on_unit_circle(z))
            return exact(std::sqrt(Real(2)) * eta);
        break;
    case S::Herm:
    case S::SkewHerm:
        if (br == LambdaBranch::RealAxis)
            return exact(eta);
        break;
    case S::HEven:
    case S::HOdd:
    case S::HamiltonianEO:
        if (br == LambdaBranch::ImaginaryAxis)
            return exact(eta);
        break;
    }
    Eigen::JacobiSVD<MatrixC<Real>> svd(evaluate(p, z), Eigen::ComputeFullV);
    Real upper = std::numeric_limits<Real>::infinity();
    for (Index k = 0; k < svd.matrixV().cols(); ++k)
        upper = std::min(upper, structured_value(p, s, EigenPairApprox<Real>(z, svd.matrixV().col(k)), kind));
    return {eta, upper, false};
}

template <typename Real> TakagiFactorization<Real> takagi(const MatrixC<Real> &a) {
    const Index n = a.rows();
    if (a.cols() != n || detail::symmetry_defect(a, 1) > Real(1e-12) * (Real(1) + a.norm()))
        throw std::invalid_argument("takagi: matrix is not complex symmetric");
    const MatrixC<Real> sym = (a + MatrixC<Real>(a.transpose())) / Real(2);
    TakagiFactorization<Real> t;
    t.U.resize(n, n);
    t.sigma.resize(n);
    const Real floor = std::numeric_limits<Real>::epsilon() * (Real(1) + sym.norm()) * Real(1e-3);
    for (Index k = 0; k < n; ++k) {
        const MatrixC<Real> q = detail::complement<Real>(t.U.leftCols(k), n);
        const MatrixC<Real> b = q.adjoint() * sym * q.conjugate();
        Eigen::JacobiSVD<MatrixC<Real>> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Real sigma = svd.singularValues()(0);
        if (sigma <= floor) {
            t.U.rightCols(n - k) = q;
            t.sigma.tail(n - k).setZero();
            break;
        }
        // B v = sigma w gives B conj(u) = sigma u for u = w + conj(v) and for u = i (w - conj(v));
        // their squared norms sum to 4, so the larger one is well conditioned.
        const VectorC<Real> w = svd.matrixU().col(0);
        const VectorC<Real> v = svd.matrixV().col(0);
        VectorC<Real> u = w + v.conjugate();
        const VectorC<Real> alt = Complex<Real>(0, 1) * (w - v.conjugate());
        if (alt.norm() > u.norm())
            u = alt;
        t.U.col(k) = q * u.normalized();
        t.sigma(k) = sigma;
    }
    return t;
}

template <typename Real> TakagiFactorization<Real> takagi_skew(const MatrixC<Real> &a) {
    const Index n = a.rows();
    if (a.cols() != n || detail::symmetry_defect(a, -1) > Real(1e-12) * (Real(1) + a.norm()))
        throw std::invalid_argument("takagi_skew: matrix is not complex skew-symmetric");
    if (n % 2 != 0)
        throw std::invalid_argument("takagi_skew: odd order is always singular and is not supported");
    const MatrixC<Real> skew = (a - MatrixC<Real>(a.transpose())) / Real(2);
    TakagiFactorization<Real> t;
    t.U.resize(n, n);
    t.s.resize(n / 2);
    const Real floor = std::numeric_limits<Real>::epsilon() * (Real(1) + skew.norm()) * Real(1e-3);
    for (Index k = 0; k < n; k += 2) {
        const MatrixC<Real> q = detail::complement<Real>(t.U.leftCols(k), n);
        const MatrixC<Real> b = q.adjoint() * skew * q.conjugate();
        Eigen::JacobiSVD<MatrixC<Real>> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Real sigma = svd.singularValues()(0);
        if (sigma <= floor) {
            t.U.rightCols(n - k) = q;
            t.s.tail((n - k) / 2).setZero();
            break;
        }
        // B v = sigma w: u1 = conj(v), u2 = -w give B conj([u1 u2]) = [u1 u2] [[0, s], [-s, 0]].
        VectorC<Real> u1 = svd.matrixV().col(0).conjugate();
        VectorC<Real> u2 = -svd.matrixU().col(0);
        u2 -= u1 * u1.dot(u2);
        t.U.col(k) = q * u1;
        t.U.col(k + 1) = q * u2.normalized();
        t.s(k / 2) = sigma;
    }
    return t;
}

template <typename Real> MatrixC<Real> takagi_reconstruct(const TakagiFactorization<Real> &t) {
    const Index n = t.U.rows();
    MatrixC<Real> d = MatrixC<Real>::Zero(n, n);
    if (t.s.size() > 0) {
        for (Index k = 0; k < t.s.size(); ++k) {
            d(2 * k, 2 * k + 1) = t.s(k);
            d(2 * k + 1, 2 * k) = -t.s(k);
        }
    } else {
        d.diagonal() = t.sigma.template cast<Complex<Real>>();
    }
    return t.U * d * t.U.transpose();
}

template <typename Real>
MatrixPolynomial<Real> minimal_eigenvalue_perturbation(const MatrixPolynomial<Real> &p, StructureClass s, Complex<Real> z,
                                                       NormKind kind) {
    using S = StructureClass;
    require_class(p, s);
    const Index n = p.dim();
    const LambdaBranch br = classify_lambda<Real>(s, z);
    const Real w = power_vector(z, p.degree(), Ordering::Ascending).norm();
    auto spread = [&](const MatrixC<Real> &core) {
        return p.map([&](int j, const MatrixC<Real> &) -> MatrixC<Real> {
            return (-std::pow(std::conj(z), j) / (w * w)) * core;
        });
    };
    switch (s) {
    case S::Sym: {
        const TakagiFactorization<Real> t = takagi<Real>(evaluate(p, z));
        const VectorC<Real> u = t.U.col(n - 1);
        return project_to_class(spread(t.sigma(n - 1) * u * u.transpose()), s);
    }
    case S::SkewSym: {
        if (n % 2 != 0)
            return MatrixPolynomial<Real>::zero(n, p.degree());
        const TakagiFactorization<Real> t = takagi_skew<Real>(evaluate(p, z));
        const MatrixC<Real> u = t.U.rightCols(2);
        MatrixC<Real> d = MatrixC<Real>::Zero(2, 2);
        d(0, 1) = t.s(t.s.size() - 1);
        d(1, 0) = -d(0, 1);
        return project_to_class(spread(u * d * u.transpose()), s);
    }
    case S::TEven:
    case S::TOdd:
        if (kind == NormKind::Frobenius && p.degree() % 2 == 1 && detail::on_unit_circle(z)) {
            Eigen::JacobiSVD<MatrixC<Real>> svd(evaluate(p, z), Eigen::ComputeFullV);
            return minimal_perturbation(p, s, EigenPairApprox<Real>(z, svd.matrixV().col(n - 1)), kind);
        }
        break;
    case S::Herm:
    case S::SkewHerm:
    case S::HEven:
    case S::HOdd:
    case S::HamiltonianEO: {
        const bool herm = s == S::Herm || s == S::SkewHerm;
        if ((herm && br == LambdaBranch::RealAxis) || (!herm && br == LambdaBranch::ImaginaryAxis)) {
            const detail::Reduction<Real> red = detail::reduce(p, s);
            const auto d = detail::hermitian_axis_perturbation(red.p, red.base, detail::snap(z, br));
            return project_to_class(detail::pull_back(d, red.back), s);
        }
        break;
    }
    }
    throw UncoveredCase("no minimal structured eigenvalue perturbation is known for class " +
                        std::string(to_string(s)) + " at this point");
}

template <typename Real> Complex<Real> PseudospectrumGrid<Real>::node(int i, int j) const {
    const Real re = Real(region.re_min) + Real(i) * Real(region.re_max - region.re_min) / Real(nx - 1);
    const Real im = Real(region.im_min) + Real(j) * Real(region.im_max - region.im_min) / Real(ny - 1);
    return {re, im};
}

template <typename Real>
PseudospectrumGrid<Real> pseudospectrum_grid(const MatrixPolynomial<Real> &p, const GridRegion &region, int nx, int ny,
                                             std::optional<StructureClass> s, NormKind kind, unsigned threads) {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("grid needs at least 2 nodes per direction");
    for (double v : {region.re_min, region.re_max, region.im_min, region.im_max})
        if (!std::isfinite(v))
            throw std::invalid_argument("grid region must be finite");
    if (!(region.re_min < region.re_max) || !(region.im_min < region.im_max))
        throw std::invalid_argument("grid region must have min < max");
    if (s)
        require_class(p, *s);

    PseudospectrumGrid<Real> g;
    g.region = region;
    g.nx = nx;
    g.ny = ny;
    g.structure = s;
    g.norm_kind = kind;
    g.values.resize(nx, ny);
    g.underflow.resize(nx, ny);
    if (s) {
        g.structured_values = MatrixR<Real>(nx, ny);
        g.bound_only = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>(nx, ny);
    }

    auto work = [&](int i, int j) {
        const Complex<Real> z = g.node(i, j);
        const Real pn = evaluate(p, z).norm();
        g.values(i, j) = eta_eigenvalue(p, z);
        g.underflow(i, j) = !std::isfinite(pn) || !std::isfinite(g.values(i, j)) ||
                            (pn > Real(0) && pn < std::numeric_limits<Real>::min() / std::numeric_limits<Real>::epsilon());
        if (s) {
            const Interval<Real> iv = eta_eigenvalue_structured(p, *s, z, kind);
            (*g.structured_values)(i, j) = iv.upper;
            (*g.bound_only)(i, j) = !iv.exact;
        }
    };

    const long total = long(nx) * ny;
    const unsigned t = std::max(1u, std::min<unsigned>(threads ? threads : thread_budget(), unsigned(total)));
    std::vector<std::exception_ptr> errors(t);
    auto run = [&](unsigned id) {
        try {
            for (long k = id; k < total; k += t)
                work(int(k % nx), int(k / nx));
        } catch (...) {
            errors[id] = std::current_exception();
        }
    };
    if (t == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned id = 0; id < t; ++id)
            pool.emplace_back(run, id);
        for (auto &th : pool)
            th.join();
    }
    for (auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return g;
}

} // namespace structbe
