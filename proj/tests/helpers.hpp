#pragma once

#include <algorithm>
#include <vector>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "structbe/polycore.hpp"
#include "structbe/random.hpp"

namespace structbe::testing {

using S = StructureClass;
using C = Complex<double>;
using Mat = MatrixC<double>;
using Vec = VectorC<double>;
using Poly = MatrixPolynomial<double>;
using Pair = EigenPairApprox<double>;

inline double rel_err(double value, double reference) {
    const double d = std::abs(value - reference);
    return d == 0 ? 0 : d / std::max(std::abs(reference), 1e-300);
}

inline Poly poly(std::vector<Mat> cs) { return Poly(std::move(cs)); }

inline Mat mat2(C a, C b, C c, C d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

// A lambda in the branch a test cares about: generic, on the class axis, or on the unit circle.
inline C lambda_for(Sampler<double> &g, S s, int regime) {
    if (regime == 1) {
        if (s == S::Herm || s == S::SkewHerm)
            return {g.normal(), 0.0};
        if (s == S::HEven || s == S::HOdd || s == S::HamiltonianEO)
            return {0.0, g.normal()};
    }
    if (regime == 2)
        return g.on_unit_circle();
    return g.complex_normal();
}

inline int dim_for(Sampler<double> &g, S s) {
    return s == S::HamiltonianEO ? 2 * g.integer(1, 3) : g.integer(2, 6);
}

// Eigenvalues of P with nonsingular leading coefficient, from the monic companion matrix.
inline std::vector<C> eigenvalues(const Poly &p) {
    const Index n = p.dim();
    const int m = p.degree();
    const Mat inv = p[m].inverse();
    Mat comp = Mat::Zero(m * n, m * n);
    for (int j = 0; j < m; ++j)
        comp.block(0, (m - 1 - j) * n, n, n) = -inv * p[j];
    if (m > 1)
        comp.block(n, 0, (m - 1) * n, (m - 1) * n).setIdentity();
    Eigen::ComplexEigenSolver<Mat> es(comp, false);
    const Vec ev = es.eigenvalues();
    return std::vector<C>(ev.data(), ev.data() + ev.size());
}

// Every point of `a` has a partner in `b` within tol (matching greedily, without reuse).
inline bool set_match(const std::vector<C> &a, std::vector<C> b, double tol) {
    for (const C &z : a) {
        auto it = std::min_element(b.begin(), b.end(),
                                   [&](const C &u, const C &v) { return std::abs(u - z) < std::abs(v - z); });
        if (it == b.end() || std::abs(*it - z) > tol * (1 + std::abs(z)))
            return false;
        b.erase(it);
    }
    return true;
}

} // namespace structbe::testing
