#pragma once

#include <cstdint>

#include "structbe/polycore.hpp"

namespace structbe {

// Orthonormal (real Frobenius inner product) basis of a structure class at fixed n and m.
// Each element is a single structured coefficient matrix placed at index `degree`.
template <typename Real> struct RealParametrization {
    struct Element {
        int degree;
        MatrixC<Real> matrix;
    };
    std::vector<Element> basis;

    Index dimension() const { return static_cast<Index>(basis.size()); }
    MatrixPolynomial<Real> assemble(const VectorR<Real> &theta, Index n, int m) const;
};

template <typename Real> RealParametrization<Real> real_parametrization(StructureClass s, Index n, int m);

// Minimum Frobenius norm of a structured Delta P with Delta P(lambda) x = r, by pseudoinverse
// over the real parametrization.
template <typename Real>
Real frobenius_oracle(const MatrixPolynomial<Real> &p, StructureClass s, const EigenPairApprox<Real> &pair);

enum class SampleFamily {
    // Minimal perturbation plus a projector-sandwiched structured polynomial.
    Projector,
    // Minimum-norm solution plus a random null-space direction of the feasibility system.
    NullSpace,
};

// Norms of `count` random feasible structured perturbations. The minimal perturbation of the
// requested kind is the base point for the projector family.
template <typename Real>
std::vector<Real> feasible_sample(const MatrixPolynomial<Real> &p, StructureClass s, const EigenPairApprox<Real> &pair,
                                  NormKind kind, int count, std::uint64_t seed,
                                  SampleFamily family = SampleFamily::Projector);

} // namespace structbe
