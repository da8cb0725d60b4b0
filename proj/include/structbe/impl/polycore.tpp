#pragma once

#include <cmath>

#include <Eigen/SVD>

#include "structbe/polycore.hpp"

namespace structbe {

template <typename Real>
MatrixPolynomial<Real>::MatrixPolynomial(std::vector<MatrixC<Real>> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
        throw std::invalid_argument("matrix polynomial needs at least one coefficient");
    const Index n = coeffs_.front().rows();
    if (n < 1)
        throw std::invalid_argument("matrix polynomial dimension must be at least 1");
    for (const auto &a : coeffs_)
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument("coefficients must be square with a common dimension");
}

template <typename Real> MatrixPolynomial<Real> MatrixPolynomial<Real>::zero(Index n, int m) {
    return MatrixPolynomial(std::vector<MatrixC<Real>>(static_cast<size_t>(m + 1), MatrixC<Real>::Zero(n, n)));
}

template <typename Real>
MatrixPolynomial<Real> MatrixPolynomial<Real>::operator+(const MatrixPolynomial &other) const {
    if (other.degree() != degree() || other.dim() != dim())
        throw std::invalid_argument("polynomial shapes differ");
    return map([&](int j, const MatrixC<Real> &a) -> MatrixC<Real> { return a + other[j]; });
}

template <typename Real>
MatrixPolynomial<Real> MatrixPolynomial<Real>::operator-(const MatrixPolynomial &other) const {
    if (other.degree() != degree() || other.dim() != dim())
        throw std::invalid_argument("polynomial shapes differ");
    return map([&](int j, const MatrixC<Real> &a) -> MatrixC<Real> { return a - other[j]; });
}

template <typename Real>
MatrixPolynomial<Real> MatrixPolynomial<Real>::operator*(const Complex<Real> &s) const {
    return map([&](int, const MatrixC<Real> &a) -> MatrixC<Real> { return s * a; });
}

template <typename Real>
EigenPairApprox<Real>::EigenPairApprox(Complex<Real> lambda, VectorC<Real> x, NormalizePolicy policy)
    : lambda_(lambda), x_(std::move(x)) {
    const Real nx = x_.norm();
    if (!(nx > Real(0)) || !std::isfinite(static_cast<double>(nx)))
        throw std::invalid_argument("eigenvector approximation must be nonzero and finite");
    if (std::abs(nx - Real(1)) > Real(1e-8)) {
        if (policy == NormalizePolicy::Strict)
            throw std::invalid_argument("eigenvector approximation is not unit norm");
        renormalized_ = true;
    }
    x_ /= nx;
}

template <typename Real> MatrixC<Real> evaluate(const MatrixPolynomial<Real> &p, Complex<Real> z) {
    MatrixC<Real> acc = p[p.degree()];
    for (int j = p.degree() - 1; j >= 0; --j)
        acc = z * acc + p[j];
    return acc;
}

template <typename Real> PowerVector<Real> power_vector(Complex<Real> z, int m, Ordering ordering) {
    if (m < 0)
        throw std::invalid_argument("power vector degree must be nonnegative");
    VectorC<Real> w(m + 1);
    Complex<Real> zj(1);
    for (int j = 0; j <= m; ++j) {
        w(ordering == Ordering::Ascending ? j : m - j) = zj;
        zj *= z;
    }
    return {std::move(w), ordering};
}

template <typename Real> Real poly_norm(const MatrixPolynomial<Real> &p, NormKind kind) {
    Real sum(0);
    for (const auto &a : p.coeffs()) {
        if (kind == NormKind::Frobenius) {
            sum += a.squaredNorm();
        } else {
            const Real s = a.size() == 0 ? Real(0)
                                         : Eigen::JacobiSVD<MatrixC<Real>>(a).singularValues()(0);
            sum += s * s;
        }
    }
    return std::sqrt(sum);
}

template <typename Real> VectorC<Real> even_projection(const VectorC<Real> &w) {
    VectorC<Real> out = w;
    for (Index j = 1; j < out.size(); j += 2)
        out(j) = Complex<Real>(0);
    return out;
}

template <typename Real> VectorC<Real> odd_projection(const VectorC<Real> &w) {
    return w - even_projection<Real>(w);
}

template <typename Real> MatrixC<Real> hamiltonian_j(Index n) {
    if (n % 2 != 0)
        throw std::invalid_argument("J requires an even dimension");
    const Index k = n / 2;
    MatrixC<Real> j = MatrixC<Real>::Zero(n, n);
    j.topRightCorner(k, k).setIdentity();
    j.bottomLeftCorner(k, k) = -MatrixC<Real>::Identity(k, k);
    return j;
}

template <typename Real> MatrixC<Real> symmetric_part(const MatrixC<Real> &a, int sign, bool transpose) {
    const Real half(0.5);
    MatrixC<Real> t = transpose ? MatrixC<Real>(a.transpose()) : MatrixC<Real>(a.adjoint());
    MatrixC<Real> b = half * (a + Real(sign) * t);
    // Make the defining identity exact on the diagonal.
    for (Index i = 0; i < b.rows(); ++i) {
        if (transpose && sign < 0)
            b(i, i) = Complex<Real>(0);
        else if (!transpose && sign > 0)
            b(i, i) = Complex<Real>(b(i, i).real(), 0);
        else if (!transpose && sign < 0)
            b(i, i) = Complex<Real>(0, b(i, i).imag());
    }
    for (Index c = 0; c < b.cols(); ++c)
        for (Index r = c + 1; r < b.rows(); ++r) {
            const Complex<Real> v = transpose ? b(r, c) : std::conj(b(r, c));
            b(c, r) = Real(sign) * v;
        }
    return b;
}

namespace detail {

template <typename Real> MatrixC<Real> project_coefficient(const MatrixC<Real> &a, StructureClass s, int j) {
    const int sign = coefficient_sign(s, j);
    if (s == StructureClass::HamiltonianEO) {
        const MatrixC<Real> jm = hamiltonian_j<Real>(a.rows());
        // A = J^{-1} B = -J B with B = J A projected.
        return -jm * symmetric_part<Real>(jm * a, sign, false);
    }
    return symmetric_part<Real>(a, sign, is_transpose_family(s));
}

} // namespace detail

template <typename Real>
MatrixPolynomial<Real> project_to_class(const MatrixPolynomial<Real> &p, StructureClass s) {
    if (s == StructureClass::HamiltonianEO && p.dim() % 2 != 0)
        throw std::invalid_argument("HamiltonianEO requires an even dimension");
    return p.map([&](int j, const MatrixC<Real> &a) -> MatrixC<Real> {
        return detail::project_coefficient<Real>(a, s, j);
    });
}

template <typename Real> Real structure_distance(const MatrixPolynomial<Real> &p, StructureClass s) {
    if (s == StructureClass::HamiltonianEO && p.dim() % 2 != 0)
        throw std::invalid_argument("HamiltonianEO requires an even dimension");
    Real sum(0);
    for (int j = 0; j <= p.degree(); ++j)
        sum += (p[j] - detail::project_coefficient<Real>(p[j], s, j)).squaredNorm();
    return std::sqrt(sum);
}

template <typename Real>
VectorC<Real> residual(const MatrixPolynomial<Real> &p, const EigenPairApprox<Real> &pair) {
    if (pair.x().size() != p.dim())
        throw std::invalid_argument("eigenvector length does not match polynomial dimension");
    return -(evaluate(p, pair.lambda()) * pair.x());
}

template <typename Real> Real membership_tolerance(const MatrixPolynomial<Real> &p) {
    return Real(1e-12) * (Real(1) + poly_norm(p, NormKind::Frobenius));
}

template <typename Real> void require_class(const MatrixPolynomial<Real> &p, StructureClass s) {
    if (s == StructureClass::HamiltonianEO && p.dim() % 2 != 0)
        throw StructureMismatch("HamiltonianEO requires an even dimension");
    if (s == StructureClass::SkewSym && p.dim() == 1)
        throw StructureMismatch("skew-symmetric polynomials of dimension 1 are identically zero");
    if (structure_distance(p, s) > membership_tolerance(p))
        throw StructureMismatch("polynomial is not in class " + std::string(to_string(s)));
}

} // namespace structbe
