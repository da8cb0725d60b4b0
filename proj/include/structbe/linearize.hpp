#pragma once

#include <limits>

#include "structbe/backerr.hpp"

namespace structbe {

// L(z) = zX + Y of size mn, a member of L1(P) with right ansatz vector v.
template <typename Real> struct Pencil {
    MatrixC<Real> X;
    MatrixC<Real> Y;
    VectorC<Real> v;
    std::optional<StructureClass> declared_structure;
    Index block_size = 0;
    int poly_degree = 0;

    MatrixPolynomial<Real> as_polynomial() const { return MatrixPolynomial<Real>({Y, X}); }
};

// Diagonal of Sigma = diag((-1)^{m-1}, ..., (-1)^0).
template <typename Real> VectorR<Real> sigma_diagonal(int m);

template <typename Real> Pencil<Real> companion_first(const MatrixPolynomial<Real> &p);

// (V kron I) times the first companion pencil; V must be nonsingular with first column v.
template <typename Real>
Pencil<Real> l1_pencil(const MatrixPolynomial<Real> &p, const VectorC<Real> &v, const MatrixC<Real> &vmat);

// Unique pencil satisfying both the right and the left ansatz identity with vector v.
template <typename Real> Pencil<Real> dl_pencil(const MatrixPolynomial<Real> &p, const VectorC<Real> &v);

// Pencil of class pencil_class in L1(P) with right ansatz vector v, for P of class poly_class.
// Throws InadmissibleAnsatz when no such pencil exists.
template <typename Real>
Pencil<Real> structured_pencil(const MatrixPolynomial<Real> &p, StructureClass poly_class, StructureClass pencil_class,
                               const VectorC<Real> &v);

// Solves for the pencil without consulting the admissibility table; nullopt when none exists.
template <typename Real>
std::optional<Pencil<Real>> try_structured_pencil(const MatrixPolynomial<Real> &p, StructureClass poly_class,
                                                  StructureClass pencil_class, const VectorC<Real> &v);

// ||L(z)(Lambda_{m-1} kron I) - v kron P(z)||_F
template <typename Real> Real membership_residual(const MatrixPolynomial<Real> &p, const Pencil<Real> &l, Complex<Real> z);

// ||(Lambda_{m-1}^T kron I) L(z) - v^T kron P(z)||_F
template <typename Real> Real left_membership_residual(const MatrixPolynomial<Real> &p, const Pencil<Real> &l, Complex<Real> z);

// Pencil classes with a structured linearization row for a polynomial class; empty for Hamiltonian.
std::vector<StructureClass> structured_pencil_classes(StructureClass poly_class);

// Checks the ansatz condition for a (polynomial, pencil) class pair. Throws std::invalid_argument
// for pairs that have no structured linearization in L1(P).
template <typename Real>
bool admissible_ansatz(StructureClass poly_class, StructureClass pencil_class, const VectorC<Real> &v, int m);

// (lambda, Lambda_{m-1} kron x / ||Lambda_{m-1} kron x||)
template <typename Real> EigenPairApprox<Real> lift(const EigenPairApprox<Real> &pair, int m);

template <typename Real> Real eta_pencil(const Pencil<Real> &l, const EigenPairApprox<Real> &pair);

template <typename Real>
BackwardErrorResult<Real> eta_pencil_structured(const Pencil<Real> &l, StructureClass pencil_class,
                                                const EigenPairApprox<Real> &pair, NormKind kind);

enum class BoundFamily {
    Unstructured,        // eta(L)/eta(P), any member of L1(P)
    StructuredLower,     // eta^S(L)/eta(P), lower bound only
    SymmetricPair,       // symmetric P and pencil, against eta^S(P)
    SkewSymmetricPair,   // skew-symmetric P and pencil, against eta^S(P)
    TEvenParity,         // T-even P, pencil chosen by |lambda|, against eta(P)
    TOddParity,          // T-odd P, roles of the pencils swapped, against eta(P)
    TEvenSpectral,       // T-even P, spectral, against eta_2^S(P)
    TOddSpectral,        // T-odd P, spectral, against eta_2^S(P)
    HermitianRealAxis,   // Herm/skew-Herm P, real lambda, against eta^S(P)
    HEvenImaginaryAxis,  // H-even/H-odd P, imaginary lambda, against eta^S(P)
};

std::string_view to_string(BoundFamily f);

template <typename Real> struct RatioReport {
    BoundFamily family;
    NormKind norm_kind;
    Real eta_poly;
    Real eta_pencil;
    Real ratio;
    Real lower_bound;
    Real upper_bound = std::numeric_limits<Real>::infinity();
    bool within_bounds;
};

// Every bound that applies to the combination, evaluated at (lambda, x).
template <typename Real>
std::vector<RatioReport<Real>> ratio_reports(const MatrixPolynomial<Real> &p, StructureClass poly_class,
                                             const Pencil<Real> &l, const EigenPairApprox<Real> &pair, NormKind kind);

template <typename Real> struct Recommendation {
    StructureClass pencil_class;
    std::string rationale;
    std::optional<Real> r_h;
    std::optional<Real> r_s;
};

template <typename Real> Recommendation<Real> recommend_linearization(StructureClass poly_class, Complex<Real> lambda, int m);

// Same, with the r_h / r_s advisory filled in for Hermitian and H-even families off the axis.
template <typename Real>
Recommendation<Real> recommend_linearization(const MatrixPolynomial<Real> &p, StructureClass poly_class,
                                             const EigenPairApprox<Real> &pair, const VectorC<Real> &v);

// The two advisory vectors for lambda off the axis, from s = Lambda_{m-1}^H v x^H P(lambda) x.
template <typename Real> std::pair<VectorR<Real>, VectorR<Real>> advisory_vectors(Complex<Real> lambda, Complex<Real> s);

} // namespace structbe
