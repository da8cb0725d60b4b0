#pragma once

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "structbe/linalg.hpp"

namespace structbe {

template <typename Real> MatrixR<Real> pinv(const MatrixR<Real> &a, Real cutoff) {
    if (a.size() == 0)
        return MatrixR<Real>::Zero(a.cols(), a.rows());
    Eigen::JacobiSVD<MatrixR<Real>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    const Real tol = cutoff * s(0);
    VectorR<Real> inv(s.size());
    for (Index i = 0; i < s.size(); ++i)
        inv(i) = (s(i) > tol && s(i) > Real(0)) ? Real(1) / s(i) : Real(0);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

template <typename Real>
VectorR<Real> pinv_solve(const MatrixR<Real> &a, const VectorR<Real> &b, Real cutoff) {
    if (a.size() == 0)
        return VectorR<Real>::Zero(a.cols());
    Eigen::JacobiSVD<MatrixR<Real>> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &s = svd.singularValues();
    const Real tol = cutoff * s(0);
    VectorR<Real> c = svd.matrixU().transpose() * b;
    for (Index i = 0; i < s.size(); ++i)
        c(i) = (s(i) > tol && s(i) > Real(0)) ? c(i) / s(i) : Real(0);
    return svd.matrixV() * c;
}

template <typename Real> MatrixC<Real> psd_sqrt(const MatrixC<Real> &h) {
    Eigen::SelfAdjointEigenSolver<MatrixC<Real>> es(h);
    VectorR<Real> d = es.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
    return es.eigenvectors() * d.template cast<Complex<Real>>().asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Real> MatrixC<Real> psd_inverse_sqrt(const MatrixC<Real> &h, Real cutoff) {
    Eigen::SelfAdjointEigenSolver<MatrixC<Real>> es(h);
    VectorR<Real> d(es.eigenvalues().size());
    for (Index i = 0; i < d.size(); ++i) {
        const Real e = es.eigenvalues()(i);
        d(i) = e > cutoff ? Real(1) / std::sqrt(e) : Real(0);
    }
    return es.eigenvectors() * d.template cast<Complex<Real>>().asDiagonal() * es.eigenvectors().adjoint();
}

template <typename Real> Real spectral_norm(const MatrixC<Real> &a) {
    if (a.size() == 0)
        return Real(0);
    return Eigen::JacobiSVD<MatrixC<Real>>(a).singularValues()(0);
}

} // namespace structbe
