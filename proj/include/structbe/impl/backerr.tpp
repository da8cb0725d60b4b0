#pragma once

#include <cmath>

#include "structbe/backerr.hpp"
#include "structbe/impl/linalg.tpp"
#include "structbe/impl/polycore.tpp"

namespace structbe {

template <typename Real> Real eta_unstructured(const MatrixPolynomial<Real> &p, const EigenPairApprox<Real> &pair) {
    const VectorC<Real> r = residual(p, pair);
    return r.norm() / power_vector(pair.lambda(), p.degree(), Ordering::Ascending).norm();
}

template <typename Real>
MatrixPolynomial<Real> unstructured_perturbation(const MatrixPolynomial<Real> &p, const EigenPairApprox<Real> &pair) {
    const VectorC<Real> r = residual(p, pair);
    const VectorC<Real> w = power_vector(pair.lambda(), p.degree(), Ordering::Ascending).entries;
    const Real nl2 = w.squaredNorm();
    const MatrixC<Real> rx = r * pair.x().adjoint();
    return p.map([&](int j, const MatrixC<Real> &) -> MatrixC<Real> { return (std::conj(w(j)) / nl2) * rx; });
}

template <typename Real> LambdaBranch classify_lambda(StructureClass s, Complex<Real> lambda) {
    const Real tol = Real(1e-12) * (Real(1) + std::abs(lambda));
    switch (s) {
    case StructureClass::Herm:
    case StructureClass::SkewHerm:
        return std::abs(lambda.imag()) <= tol ? LambdaBranch::RealAxis : LambdaBranch::Generic;
    case StructureClass::HEven:
    case StructureClass::HOdd:
    case StructureClass::HamiltonianEO:
        return std::abs(lambda.real()) <= tol ? LambdaBranch::ImaginaryAxis : LambdaBranch::Generic;
    case StructureClass::TOdd:
        return std::abs(lambda) <= tol ? LambdaBranch::Zero : LambdaBranch::Generic;
    default: return LambdaBranch::Generic;
    }
}

template <typename Real> MatrixR<Real> rhat_system(RHatCase kind, Complex<Real> lambda, int m) {
    const VectorC<Real> w = power_vector(lambda, m, Ordering::Ascending).entries;
    MatrixR<Real> a(2, m + 1);
    for (int j = 0; j <= m; ++j) {
        const bool herm = kind == RHatCase::HermComplexLambda || j % 2 == 0;
        if (herm) {
            a(0, j) = w(j).real();
            a(1, j) = w(j).imag();
        } else {
            a(0, j) = -w(j).imag();
            a(1, j) = w(j).real();
        }
    }
    return a;
}

template <typename Real> RHatVector<Real> rhat(RHatCase kind, Complex<Real> lambda, int m, Complex<Real> s) {
    const Real tol = Real(1e-12) * (Real(1) + std::abs(lambda));
    if (kind == RHatCase::HermComplexLambda && std::abs(lambda.imag()) <= tol)
        throw std::invalid_argument("rhat: real lambda uses the real-axis formula");
    if (kind != RHatCase::HermComplexLambda && std::abs(lambda.real()) <= tol)
        throw std::invalid_argument("rhat: purely imaginary lambda uses the imaginary-axis formula");
    VectorR<Real> rhs(2);
    rhs << s.real(), s.imag();
    return {pinv_solve<Real>(rhat_system<Real>(kind, lambda, m), rhs), kind};
}

namespace detail {

template <typename Real> struct Closed {
    Real value;
    LambdaBranch branch;
    std::optional<MatrixPolynomial<Real>> delta;
};

// Transpose classes: coefficient j is symmetric (sign +1) or skew-symmetric (sign -1).
template <typename Real>
Closed<Real> solve_transpose(const MatrixPolynomial<Real> &p, StructureClass cls, const EigenPairApprox<Real> &pair,
                             NormKind kind, LambdaBranch branch, bool build) {
    const int m = p.degree();
    const Complex<Real> lam = pair.lambda();
    const VectorC<Real> &x = pair.x();
    const VectorC<Real> xb = x.conjugate();
    const VectorC<Real> r = residual(p, pair);
    const VectorC<Real> w = power_vector(lam, m, Ordering::Ascending).entries;
    const Real nl2 = w.squaredNorm();

    // x^T r, summing only the symmetric coefficients (x^T B x = 0 for skew B).
    Real le2(0);
    Complex<Real> s(0);
    for (int j = 0; j <= m; ++j) {
        if (coefficient_sign(cls, j) > 0) {
            le2 += std::norm(w(j));
            s -= w(j) * (x.transpose() * p[j] * x)(0, 0);
        }
    }
    if (branch == LambdaBranch::Zero || le2 == Real(0))
        s = Complex<Real>(0);

    const VectorC<Real> q = r - xb * s;
    const Real q2 = q.squaredNorm();
    const Real r2 = r.squaredNorm();
    const Real diag = s == Complex<Real>(0) ? Real(0) : std::norm(s) / le2;

    Real value;
    if (cls == StructureClass::Sym && kind == NormKind::Spectral)
        value = std::sqrt(r2 / nl2);
    else if (cls == StructureClass::SkewSym && kind == NormKind::Frobenius)
        value = std::sqrt(Real(2) * r2 / nl2);
    else if (kind == NormKind::Frobenius)
        value = std::sqrt(diag + Real(2) * q2 / nl2);
    else
        value = std::sqrt(diag + q2 / nl2);

    Closed<Real> out{value, branch, std::nullopt};
    if (!build)
        return out;

    const bool correct = kind == NormKind::Spectral && q2 > Real(1e-14) * r2;
    const MatrixC<Real> xbxh = xb * x.adjoint();
    const MatrixC<Real> xbqt = xb * q.transpose();
    const MatrixC<Real> qxh = q * x.adjoint();
    const MatrixC<Real> qqt = q * q.transpose();
    out.delta = p.map([&](int j, const MatrixC<Real> &) -> MatrixC<Real> {
        const int eps = coefficient_sign(cls, j);
        const Complex<Real> cj = std::conj(w(j));
        MatrixC<Real> d = (cj / nl2) * (Real(eps) * xbqt + qxh);
        if (eps > 0 && s != Complex<Real>(0)) {
            d += (cj * s / le2) * xbxh;
            if (correct)
                d -= (cj * std::conj(s) / (le2 * q2)) * qqt;
        }
        return symmetric_part<Real>(d, eps, true);
    });
    return out;
}

// Conjugate-transpose classes: coefficient j is Hermitian (sign +1) or skew-Hermitian (-1).
template <typename Real>
Closed<Real> solve_hermitian(const MatrixPolynomial<Real> &p, StructureClass cls, const EigenPairApprox<Real> &pair,
                             const VectorC<Real> &r, NormKind kind, LambdaBranch branch, bool build) {
    const int m = p.degree();
    const Complex<Real> lam = pair.lambda();
    const VectorC<Real> &x = pair.x();

    // Snap to the axis so the diagonal system is exactly rank one there.
    Complex<Real> lam_s = lam;
    if (branch == LambdaBranch::RealAxis)
        lam_s = Complex<Real>(lam.real(), 0);
    else if (branch == LambdaBranch::ImaginaryAxis)
        lam_s = Complex<Real>(0, lam.imag());
    const VectorC<Real> w = power_vector(lam_s, m, Ordering::Ascending).entries;
    const Real nl2 = w.squaredNorm();

    const Complex<Real> s = (x.adjoint() * r)(0, 0);
    const VectorC<Real> q = r - x * s;
    const Real q2 = q.squaredNorm();
    const Real r2 = r.squaredNorm();

    const RHatCase rc = cls == StructureClass::Herm ? RHatCase::HermComplexLambda : RHatCase::HEvenComplexLambda;
    VectorR<Real> rhs(2);
    rhs << s.real(), s.imag();
    const VectorR<Real> a = pinv_solve<Real>(rhat_system<Real>(rc, lam_s, m), rhs);

    Real value;
    if (branch != LambdaBranch::Generic) {
        value = kind == NormKind::Frobenius ? std::sqrt((Real(2) * r2 - std::norm(s)) / nl2) : std::sqrt(r2 / nl2);
    } else {
        value = kind == NormKind::Frobenius ? std::sqrt(a.squaredNorm() + Real(2) * q2 / nl2)
                                            : std::sqrt(a.squaredNorm() + q2 / nl2);
    }

    Closed<Real> out{value, branch, std::nullopt};
    if (!build)
        return out;

    const bool correct = kind == NormKind::Spectral && q2 > Real(1e-14) * r2;
    const MatrixC<Real> xxh = x * x.adjoint();
    const MatrixC<Real> qxh = q * x.adjoint();
    const MatrixC<Real> xqh = x * q.adjoint();
    const MatrixC<Real> qqh = q * q.adjoint();
    out.delta = p.map([&](int j, const MatrixC<Real> &) -> MatrixC<Real> {
        const int tau = coefficient_sign(cls, j);
        const Complex<Real> dj = tau > 0 ? Complex<Real>(a(j), 0) : Complex<Real>(0, a(j));
        MatrixC<Real> d = dj * xxh + (Real(1) / nl2) * (std::conj(w(j)) * qxh + Real(tau) * w(j) * xqh);
        if (correct)
            d -= (dj / q2) * qqh;
        return symmetric_part<Real>(d, tau, false);
    });
    return out;
}

enum class PullBack { None, TimesMinusI, MinusJ };

template <typename Real> struct Reduction {
    MatrixPolynomial<Real> p;
    StructureClass base;
    PullBack back;
};

template <typename Real> Reduction<Real> reduce(const MatrixPolynomial<Real> &p, StructureClass s) {
    const Complex<Real> i(0, 1);
    switch (s) {
    case StructureClass::SkewHerm: return {p * i, StructureClass::Herm, PullBack::TimesMinusI};
    case StructureClass::HOdd: return {p * i, StructureClass::HEven, PullBack::TimesMinusI};
    case StructureClass::HamiltonianEO: {
        const MatrixC<Real> jm = hamiltonian_j<Real>(p.dim());
        return {p.map([&](int, const MatrixC<Real> &a) -> MatrixC<Real> { return jm * a; }), StructureClass::HEven,
                PullBack::MinusJ};
    }
    default: return {p, s, PullBack::None};
    }
}

template <typename Real> MatrixPolynomial<Real> pull_back(const MatrixPolynomial<Real> &d, PullBack back) {
    switch (back) {
    case PullBack::TimesMinusI: return d * Complex<Real>(0, -1);
    case PullBack::MinusJ: {
        const MatrixC<Real> jm = hamiltonian_j<Real>(d.dim());
        return d.map([&](int, const MatrixC<Real> &a) -> MatrixC<Real> { return -(jm * a); });
    }
    default: return d;
    }
}

template <typename Real>
Closed<Real> solve(const MatrixPolynomial<Real> &p, StructureClass s, const EigenPairApprox<Real> &pair, NormKind kind,
                   bool build) {
    require_class(p, s);
    if (pair.x().size() != p.dim())
        throw std::invalid_argument("eigenvector length does not match polynomial dimension");
    const LambdaBranch branch = classify_lambda<Real>(s, pair.lambda());
    const Reduction<Real> red = reduce(p, s);
    Closed<Real> out;
    if (is_transpose_family(red.base)) {
        out = solve_transpose(red.p, red.base, pair, kind, branch, build);
    } else {
        out = solve_hermitian(red.p, red.base, pair, residual(red.p, pair), kind, branch, build);
    }
    if (out.delta)
        out.delta = pull_back(*out.delta, red.back);
    return out;
}

} // namespace detail

template <typename Real>
Real structured_value(const MatrixPolynomial<Real> &p, StructureClass s, const EigenPairApprox<Real> &pair,
                      NormKind kind) {
    return detail::solve(p, s, pair, kind, false).value;
}

template <typename Real>
MatrixPolynomial<Real> minimal_perturbation(const MatrixPolynomial<Real> &p, StructureClass s,
                                            const EigenPairApprox<Real> &pair, NormKind kind) {
    return *detail::solve(p, s, pair, kind, true).delta;
}

template <typename Real>
BackwardErrorResult<Real> eta_structured(const MatrixPolynomial<Real> &p, StructureClass s,
                                         const EigenPairApprox<Real> &pair, NormKind kind) {
    auto sol = detail::solve(p, s, pair, kind, true);
    return {eta_unstructured(p, pair), sol.value, kind, s, sol.branch, std::move(*sol.delta)};
}

template <typename Real>
MatrixPolynomial<Real> existence_perturbation(const MatrixPolynomial<Real> &p, StructureClass s,
                                              const EigenPairApprox<Real> &pair) {
    require_class(p, s);
    const detail::Reduction<Real> red = detail::reduce(p, s);
    const VectorC<Real> &x = pair.x();
    const VectorC<Real> xb = x.conjugate();
    const VectorC<Real> r = residual(red.p, pair);
    const VectorC<Real> w = power_vector(pair.lambda(), p.degree(), Ordering::Ascending).entries;
    const Real nl2 = w.squaredNorm();
    const Index n = p.dim();
    const bool transpose = is_transpose_family(red.base);

    MatrixPolynomial<Real> d = red.p.map([&](int j, const MatrixC<Real> &a) -> MatrixC<Real> {
        const int sign = coefficient_sign(red.base, j);
        const Complex<Real> cj = std::conj(w(j));
        MatrixC<Real> out;
        if (transpose) {
            if (sign > 0) {
                const Complex<Real> rtx = (r.transpose() * x)(0, 0);
                out = -(xb * (x.transpose() * a * x)(0, 0) * x.adjoint()) +
                      (cj / nl2) * (xb * r.transpose() + r * x.adjoint() - Real(2) * rtx * xb * x.adjoint());
            } else {
                out = -(cj / nl2) * (xb * r.transpose() - r * x.adjoint());
            }
        } else {
            const MatrixC<Real> px = MatrixC<Real>::Identity(n, n) - x * x.adjoint();
            const MatrixC<Real> xrp = w(j) * x * r.adjoint() * px;
            const MatrixC<Real> prx = cj * px * r * x.adjoint();
            const MatrixC<Real> base = -(x * (x.adjoint() * a * x)(0, 0) * x.adjoint());
            out = sign > 0 ? MatrixC<Real>(base + (xrp + prx) / nl2) : MatrixC<Real>(base - (xrp - prx) / nl2);
        }
        return symmetric_part<Real>(out, sign, transpose);
    });
    return detail::pull_back(d, red.back);
}

template <typename Real>
MatrixC<Real> dkw_dilation(const MatrixC<Real> &a, const MatrixC<Real> &b, const MatrixC<Real> &c, Real mu,
                           const MatrixC<Real> &z) {
    if (!(mu > Real(0)))
        throw std::invalid_argument("dkw_dilation: mu must be positive");
    if (b.cols() != a.cols() || c.rows() != a.rows() || z.rows() != b.rows() || z.cols() != c.cols())
        throw std::invalid_argument("dkw_dilation: block dimensions are inconsistent");
    MatrixC<Real> col(a.rows() + b.rows(), a.cols());
    col << a, b;
    MatrixC<Real> row(a.rows(), a.cols() + c.cols());
    row << a, c;
    const Real tol = Real(1e-10) * mu;
    if (std::abs(spectral_norm<Real>(col) - mu) > tol || std::abs(spectral_norm<Real>(row) - mu) > tol)
        throw std::invalid_argument("dkw_dilation: ||[A;B]|| and ||[A C]|| must equal mu");
    if (spectral_norm<Real>(z) > Real(1) + Real(1e-10))
        throw std::invalid_argument("dkw_dilation: Z must be a contraction");

    const Real mu2 = mu * mu;
    const Real cut = Real(1e-12) * mu2;
    const MatrixC<Real> ia = MatrixC<Real>::Identity(a.cols(), a.cols());
    const MatrixC<Real> ib = MatrixC<Real>::Identity(a.rows(), a.rows());
    const MatrixC<Real> k = b * psd_inverse_sqrt<Real>(mu2 * ia - a.adjoint() * a, cut);
    const MatrixC<Real> l = psd_inverse_sqrt<Real>(mu2 * ib - a * a.adjoint(), cut) * c;
    const MatrixC<Real> ik = MatrixC<Real>::Identity(b.rows(), b.rows());
    const MatrixC<Real> il = MatrixC<Real>::Identity(c.cols(), c.cols());
    return -(k * a.adjoint() * l) +
           mu * psd_sqrt<Real>(ik - k * k.adjoint()) * z * psd_sqrt<Real>(il - l.adjoint() * l);
}

template <typename Real> MatrixPolynomial<Real> isometry_map(const MatrixPolynomial<Real> &p, IsometryDirection d) {
    StructureClass src = StructureClass::Herm;
    switch (d) {
    case IsometryDirection::HermToSkew: src = StructureClass::Herm; break;
    case IsometryDirection::SkewToHerm: src = StructureClass::SkewHerm; break;
    case IsometryDirection::HEvenToHOdd: src = StructureClass::HEven; break;
    case IsometryDirection::HOddToHEven: src = StructureClass::HOdd; break;
    }
    require_class(p, src);
    return p * Complex<Real>(0, 1);
}

} // namespace structbe
