#pragma once

#include "structbe/polycore.hpp"

namespace structbe {

// Which closed-form branch a structured backward error used.
enum class LambdaBranch { Generic, RealAxis, ImaginaryAxis, Zero };

std::string_view to_string(LambdaBranch b);

template <typename Real> struct BackwardErrorResult {
    Real eta_unstructured;
    Real eta_structured;
    NormKind norm_kind;
    StructureClass structure;
    LambdaBranch branch;
    MatrixPolynomial<Real> perturbation;
};

// ||r|| / ||Lambda_m||, the same for the Frobenius and spectral norms.
template <typename Real> Real eta_unstructured(const MatrixPolynomial<Real> &p, const EigenPairApprox<Real> &pair);

// Delta A_j = conj(lambda^j) r x^H / ||Lambda_m||^2, which attains eta_unstructured.
template <typename Real>
MatrixPolynomial<Real> unstructured_perturbation(const MatrixPolynomial<Real> &p, const EigenPairApprox<Real> &pair);

template <typename Real> LambdaBranch classify_lambda(StructureClass s, Complex<Real> lambda);

// Closed-form structured backward error without building the perturbation.
template <typename Real>
Real structured_value(const MatrixPolynomial<Real> &p, StructureClass s, const EigenPairApprox<Real> &pair,
                      NormKind kind);

template <typename Real>
BackwardErrorResult<Real> eta_structured(const MatrixPolynomial<Real> &p, StructureClass s,
                                         const EigenPairApprox<Real> &pair, NormKind kind);

template <typename Real>
MatrixPolynomial<Real> minimal_perturbation(const MatrixPolynomial<Real> &p, StructureClass s,
                                            const EigenPairApprox<Real> &pair, NormKind kind);

// Structured perturbation that makes (lambda, x) exact; feasible, not minimal.
template <typename Real>
MatrixPolynomial<Real> existence_perturbation(const MatrixPolynomial<Real> &p, StructureClass s,
                                              const EigenPairApprox<Real> &pair);

// Completion D with ||[[A, C], [B, D]]||_2 = mu, given ||[A; B]||_2 = ||[A, C]||_2 = mu.
template <typename Real>
MatrixC<Real> dkw_dilation(const MatrixC<Real> &a, const MatrixC<Real> &b, const MatrixC<Real> &c, Real mu,
                           const MatrixC<Real> &z);

enum class IsometryDirection { HermToSkew, SkewToHerm, HEvenToHOdd, HOddToHEven };

// Multiplication by i, checked against the source class.
template <typename Real> MatrixPolynomial<Real> isometry_map(const MatrixPolynomial<Real> &p, IsometryDirection d);

enum class RHatCase { HermComplexLambda, HEvenComplexLambda, HamiltonianComplexLambda };

template <typename Real> struct RHatVector {
    VectorR<Real> entries;
    RHatCase kind;
};

// Minimum-norm real diagonal weights a_0..a_m whose structured combination at lambda equals s.
template <typename Real> RHatVector<Real> rhat(RHatCase kind, Complex<Real> lambda, int m, Complex<Real> s);

// The 2 x (m+1) real system behind rhat; column j maps the real weight a_j to re/im parts.
template <typename Real> MatrixR<Real> rhat_system(RHatCase kind, Complex<Real> lambda, int m);

} // namespace structbe
