#pragma once

#include <stdexcept>

#include "structbe/backerr.hpp"

namespace structbe {

// Raised when no construction is known for the class/point combination.
class UncoveredCase : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

// sigma_min(P(z)) / ||Lambda_m(z)||_2, the same for both norms.
template <typename Real> Real eta_eigenvalue(const MatrixPolynomial<Real> &p, Complex<Real> z);

// Structured eigenvalue backward error. exact is set where a closed form is known; otherwise
// lower = eta(z, P) and upper is the best pointwise value over the right singular vectors of P(z).
template <typename Real> struct Interval {
    Real lower;
    Real upper;
    bool exact;
};

template <typename Real>
Interval<Real> eta_eigenvalue_structured(const MatrixPolynomial<Real> &p, StructureClass s, Complex<Real> z, NormKind kind);

template <typename Real> struct TakagiFactorization {
    MatrixC<Real> U;
    VectorR<Real> sigma;  // symmetric case, descending
    VectorR<Real> s;      // skew case, block parameters of [[0, s], [-s, 0]], descending
};

// A = U diag(sigma) U^T for complex symmetric A.
template <typename Real> TakagiFactorization<Real> takagi(const MatrixC<Real> &a);

// A = U diag(d_1, ..., d_k) U^T for complex skew-symmetric A of even order.
template <typename Real> TakagiFactorization<Real> takagi_skew(const MatrixC<Real> &a);

template <typename Real> MatrixC<Real> takagi_reconstruct(const TakagiFactorization<Real> &t);

// Structured Delta P of least norm with z in the spectrum of P + Delta P.
template <typename Real>
MatrixPolynomial<Real> minimal_eigenvalue_perturbation(const MatrixPolynomial<Real> &p, StructureClass s, Complex<Real> z,
                                                       NormKind kind);

struct GridRegion {
    double re_min, re_max, im_min, im_max;
};

template <typename Real> struct PseudospectrumGrid {
    GridRegion region;
    int nx = 0, ny = 0;
    MatrixR<Real> values;                            // values(i, j) at re index i, im index j
    std::optional<MatrixR<Real>> structured_values;  // exact value, or the upper end of the interval
    std::optional<Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>> bound_only;
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> underflow;
    std::optional<StructureClass> structure;
    NormKind norm_kind = NormKind::Spectral;

    Complex<Real> node(int i, int j) const;
};

// threads = 0 reads STRUCTBE_THREADS and falls back to the hardware concurrency.
template <typename Real>
PseudospectrumGrid<Real> pseudospectrum_grid(const MatrixPolynomial<Real> &p, const GridRegion &region, int nx, int ny,
                                             std::optional<StructureClass> s, NormKind kind, unsigned threads = 0);

unsigned thread_budget();

} // namespace structbe
