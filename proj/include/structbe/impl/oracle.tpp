#pragma once

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "structbe/impl/backerr.tpp"
#include "structbe/oracle.hpp"
#include "structbe/random.hpp"

namespace structbe {

template <typename Real>
MatrixPolynomial<Real> RealParametrization<Real>::assemble(const VectorR<Real> &theta, Index n, int m) const {
    std::vector<MatrixC<Real>> cs(static_cast<size_t>(m + 1), MatrixC<Real>::Zero(n, n));
    for (size_t k = 0; k < basis.size(); ++k)
        cs[static_cast<size_t>(basis[k].degree)] += theta(static_cast<Index>(k)) * basis[k].matrix;
    return MatrixPolynomial<Real>(std::move(cs));
}

namespace detail {

// Basis of {B : B^T = sign B} (transpose) or {B : B^H = sign B}.
template <typename Real> std::vector<MatrixC<Real>> pattern_basis(Index n, int sign, bool transpose) {
    const Complex<Real> one(1), i(0, 1);
    const Real h = Real(1) / std::sqrt(Real(2));
    std::vector<MatrixC<Real>> out;
    auto unit = [&](Index p, Index q, Complex<Real> a, Complex<Real> b) {
        MatrixC<Real> e = MatrixC<Real>::Zero(n, n);
        e(p, q) += a;
        e(q, p) += b;
        return e;
    };
    for (Index p = 0; p < n; ++p) {
        for (Index q = p; q < n; ++q) {
            if (transpose) {
                if (p == q) {
                    if (sign > 0) {
                        out.push_back(unit(p, p, one, 0));
                        out.push_back(unit(p, p, i, 0));
                    }
                } else {
                    out.push_back(unit(p, q, h * one, Real(sign) * h * one));
                    out.push_back(unit(p, q, h * i, Real(sign) * h * i));
                }
            } else {
                // Hermitian basis, multiplied by i for the skew-Hermitian pattern.
                const Complex<Real> f = sign > 0 ? one : i;
                if (p == q) {
                    out.push_back(unit(p, p, f, 0));
                } else {
                    out.push_back(f * unit(p, q, h * one, h * one));
                    out.push_back(f * unit(p, q, h * i, -h * i));
                }
            }
        }
    }
    return out;
}

} // namespace detail

template <typename Real> RealParametrization<Real> real_parametrization(StructureClass s, Index n, int m) {
    RealParametrization<Real> out;
    const bool ham = s == StructureClass::HamiltonianEO;
    MatrixC<Real> jm;
    if (ham)
        jm = hamiltonian_j<Real>(n);
    for (int j = 0; j <= m; ++j) {
        for (auto &e : detail::pattern_basis<Real>(n, coefficient_sign(s, j), is_transpose_family(s))) {
            if (ham)
                e = (-jm * e).eval();
            out.basis.push_back({j, std::move(e)});
        }
    }
    return out;
}

namespace detail {

template <typename Real> struct FeasibilitySystem {
    MatrixR<Real> a;
    VectorR<Real> b;
};

template <typename Real>
FeasibilitySystem<Real> feasibility_system(const RealParametrization<Real> &par, const MatrixPolynomial<Real> &p,
                                           const EigenPairApprox<Real> &pair) {
    const Index n = p.dim();
    const VectorC<Real> r = residual(p, pair);
    const VectorC<Real> w = power_vector(pair.lambda(), p.degree(), Ordering::Ascending).entries;
    FeasibilitySystem<Real> sys{MatrixR<Real>(2 * n, par.dimension()), VectorR<Real>(2 * n)};
    for (Index k = 0; k < par.dimension(); ++k) {
        const auto &e = par.basis[static_cast<size_t>(k)];
        const VectorC<Real> col = w(e.degree) * (e.matrix * pair.x());
        sys.a.col(k) << col.real(), col.imag();
    }
    sys.b << r.real(), r.imag();
    return sys;
}

} // namespace detail

template <typename Real>
Real frobenius_oracle(const MatrixPolynomial<Real> &p, StructureClass s, const EigenPairApprox<Real> &pair) {
    require_class(p, s);
    const auto par = real_parametrization<Real>(s, p.dim(), p.degree());
    const auto sys = detail::feasibility_system(par, p, pair);
    const VectorR<Real> theta = pinv_solve<Real>(sys.a, sys.b);
    if ((sys.a * theta - sys.b).norm() > Real(1e-10) * (Real(1) + sys.b.norm()))
        throw std::logic_error("frobenius_oracle: structured feasibility system is inconsistent");
    return theta.norm();
}

template <typename Real>
std::vector<Real> feasible_sample(const MatrixPolynomial<Real> &p, StructureClass s, const EigenPairApprox<Real> &pair,
                                  NormKind kind, int count, std::uint64_t seed, SampleFamily family) {
    require_class(p, s);
    Sampler<Real> rng(seed);
    std::vector<Real> norms;
    const Index n = p.dim();
    const int m = p.degree();

    if (family == SampleFamily::Projector) {
        const MatrixPolynomial<Real> base = minimal_perturbation(p, s, pair, kind);
        const Real scale = std::max(poly_norm(base, NormKind::Frobenius), Real(1e-3));
        const VectorC<Real> &x = pair.x();
        const MatrixC<Real> px = MatrixC<Real>::Identity(n, n) - x * x.adjoint();
        const MatrixC<Real> left = is_transpose_family(s) ? MatrixC<Real>(px.transpose()) : px;
        // For HamiltonianEO the sandwich acts on the H-even polynomial J*P.
        const MatrixC<Real> jm = s == StructureClass::HamiltonianEO ? hamiltonian_j<Real>(n) : MatrixC<Real>();
        const StructureClass rs = s == StructureClass::HamiltonianEO ? StructureClass::HEven : s;
        for (int k = 0; k < count; ++k) {
            MatrixPolynomial<Real> r = rng.structured(n, m, rs);
            r = r * Complex<Real>(rng.uniform(Real(0), Real(2)) * scale / poly_norm(r, NormKind::Frobenius));
            MatrixPolynomial<Real> sand = r.map([&](int, const MatrixC<Real> &a) -> MatrixC<Real> {
                MatrixC<Real> b = left * a * px;
                return s == StructureClass::HamiltonianEO ? MatrixC<Real>(-jm * b) : b;
            });
            norms.push_back(poly_norm(base + sand, kind));
        }
        return norms;
    }

    const auto par = real_parametrization<Real>(s, n, m);
    const auto sys = detail::feasibility_system(par, p, pair);
    const VectorR<Real> theta = pinv_solve<Real>(sys.a, sys.b);
    Eigen::JacobiSVD<MatrixR<Real>> svd(sys.a, Eigen::ComputeFullV);
    const auto &sv = svd.singularValues();
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > Real(1e-13) * sv(0))
            ++rank;
    const MatrixR<Real> null = svd.matrixV().rightCols(par.dimension() - rank);
    const Real scale = std::max(theta.norm(), Real(1e-3));
    for (int k = 0; k < count; ++k) {
        VectorR<Real> t(null.cols());
        for (Index i = 0; i < t.size(); ++i)
            t(i) = rng.normal();
        VectorR<Real> step = null * t;
        if (step.norm() > Real(0))
            step *= rng.uniform(Real(0), Real(2)) * scale / step.norm();
        norms.push_back(poly_norm(par.assemble(theta + step, n, m), kind));
    }
    return norms;
}

} // namespace structbe
