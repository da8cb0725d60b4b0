#pragma once

#include "structbe/core.hpp"

namespace structbe {

template <typename Real> struct PowerVector {
    VectorC<Real> entries;
    Ordering ordering;

    Real norm() const { return entries.norm(); }
};

// Horner evaluation of sum_j z^j A_j.
template <typename Real> MatrixC<Real> evaluate(const MatrixPolynomial<Real> &p, Complex<Real> z);

// Ascending: [1, z, ..., z^m]. Descending: [z^m, ..., z, 1] (length m+1; pass m-1 for the
// length-m vector used by pencils).
template <typename Real> PowerVector<Real> power_vector(Complex<Real> z, int m, Ordering ordering);

template <typename Real> Real poly_norm(const MatrixPolynomial<Real> &p, NormKind kind);

// Zeroes odd-index entries; index 0 counts as even.
template <typename Real> VectorC<Real> even_projection(const VectorC<Real> &w);
template <typename Real> VectorC<Real> odd_projection(const VectorC<Real> &w);

// J = [[0, I], [-I, 0]] of size n (n even).
template <typename Real> MatrixC<Real> hamiltonian_j(Index n);

// Root-sum-square over coefficients of the Frobenius distance to the class.
template <typename Real> Real structure_distance(const MatrixPolynomial<Real> &p, StructureClass s);

template <typename Real>
MatrixPolynomial<Real> project_to_class(const MatrixPolynomial<Real> &p, StructureClass s);

// Nearest matrix B with B^T = sign*B (transpose == true) or B^H = sign*B.
template <typename Real> MatrixC<Real> symmetric_part(const MatrixC<Real> &a, int sign, bool transpose);

// r = -P(lambda) x
template <typename Real>
VectorC<Real> residual(const MatrixPolynomial<Real> &p, const EigenPairApprox<Real> &pair);

// Throws StructureMismatch unless structure_distance <= 1e-12 (1 + ||P||_F). Also rejects odd
// dimensions for HamiltonianEO.
template <typename Real> void require_class(const MatrixPolynomial<Real> &p, StructureClass s);

template <typename Real> Real membership_tolerance(const MatrixPolynomial<Real> &p);

} // namespace structbe
