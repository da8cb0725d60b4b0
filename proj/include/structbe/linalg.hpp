#pragma once

#include "structbe/core.hpp"

namespace structbe {

// Minimum-norm least-squares solution via SVD; singular values below cutoff*sigma_max are
// treated as zero.
template <typename Real>
VectorR<Real> pinv_solve(const MatrixR<Real> &a, const VectorR<Real> &b, Real cutoff = Real(1e-13));

template <typename Real> MatrixR<Real> pinv(const MatrixR<Real> &a, Real cutoff = Real(1e-13));

// Square root and pseudo-inverse square root of a Hermitian positive semidefinite matrix.
// Negative eigenvalues are clamped to zero; eigenvalues below cutoff are dropped from the
// inverse.
template <typename Real> MatrixC<Real> psd_sqrt(const MatrixC<Real> &h);
template <typename Real> MatrixC<Real> psd_inverse_sqrt(const MatrixC<Real> &h, Real cutoff);

template <typename Real> Real spectral_norm(const MatrixC<Real> &a);

} // namespace structbe
