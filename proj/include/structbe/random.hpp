#pragma once

#include <cstdint>
#include <optional>
#include <numbers>
#include <random>

#include "structbe/linalg.hpp"
#include "structbe/polycore.hpp"

namespace structbe {

// Seeded generator for test data. Every draw goes through one engine, so a seed fixes the
// whole sequence.
template <typename Real> class Sampler {
  public:
    explicit Sampler(std::uint64_t seed) : engine_(seed) {}

    Real normal() { return normal_(engine_); }
    Real uniform(Real lo, Real hi) { return lo + (hi - lo) * unit_(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    std::uint64_t next_seed() { return engine_(); }

    Complex<Real> complex_normal() { return {normal(), normal()}; }

    MatrixC<Real> matrix(Index rows, Index cols) {
        MatrixC<Real> a(rows, cols);
        for (Index c = 0; c < cols; ++c)
            for (Index r = 0; r < rows; ++r)
                a(r, c) = complex_normal();
        return a;
    }

    VectorC<Real> unit_vector(Index n) {
        VectorC<Real> x = matrix(n, 1);
        return x / x.norm();
    }

    MatrixPolynomial<Real> polynomial(Index n, int m) {
        std::vector<MatrixC<Real>> cs;
        for (int j = 0; j <= m; ++j)
            cs.push_back(matrix(n, n));
        return MatrixPolynomial<Real>(std::move(cs));
    }

    MatrixPolynomial<Real> structured(Index n, int m, StructureClass s) {
        return project_to_class(polynomial(n, m), s);
    }

    // Uniform point in the annulus lo <= |z| <= hi.
    Complex<Real> in_annulus(Real lo, Real hi) {
        const Real rad = std::sqrt(uniform(lo * lo, hi * hi));
        return std::polar(rad, uniform(Real(0), Real(2) * std::numbers::pi_v<Real>));
    }

    // |z| log-uniform in [lo, hi], uniform argument.
    Complex<Real> log_radius(Real lo, Real hi) {
        const Real rad = std::exp(uniform(std::log(lo), std::log(hi)));
        return std::polar(rad, uniform(Real(0), Real(2) * std::numbers::pi_v<Real>));
    }

    // Unit ansatz vector in the admissible set of a structured linearization; nullopt when the
    // set is {0} (for example m = 1 with a condition of the form Sigma v = -v).
    std::optional<VectorC<Real>> ansatz_vector(StructureClass poly, StructureClass pencil, int m) {
        using S = StructureClass;
        VectorC<Real> v(m);
        for (int i = 0; i < m; ++i)
            v(i) = complex_normal();
        VectorC<Real> sigma(m);
        for (int i = 0; i < m; ++i)
            sigma(i) = ((m - 1 - i) % 2 == 0) ? Real(1) : Real(-1);
        const Complex<Real> iu(0, 1);
        const VectorC<Real> sv = sigma.cwiseProduct(v);
        const VectorC<Real> svb = sigma.cwiseProduct(v.conjugate());
        const VectorC<Real> re = v.real().template cast<Complex<Real>>();
        const bool same = poly == pencil;
        switch (poly) {
        case S::Sym:
        case S::SkewSym: break;
        case S::TEven:
        case S::TOdd: v = same ? VectorC<Real>((v + sv) / Real(2)) : VectorC<Real>((v - sv) / Real(2)); break;
        case S::Herm:
        case S::SkewHerm: v = same ? re : VectorC<Real>(iu * re); break;
        case S::HEven:
        case S::HOdd: v = same ? VectorC<Real>((v + svb) / Real(2)) : VectorC<Real>((v - svb) / Real(2)); break;
        default: return std::nullopt;
        }
        if (v.norm() < Real(1e-8))
            return std::nullopt;
        return VectorC<Real>(v / v.norm());
    }

    struct DilationInstance {
        MatrixC<Real> a, b, c, z;
        Real mu;
    };

    // Blocks with ||[A; B]||_2 = ||[A, C]||_2 = mu and a contraction Z, found by rescaling B or C.
    DilationInstance dilation_instance(Index p, Index q, Index r, Index s) {
        DilationInstance d{matrix(p, q), matrix(r, q), matrix(p, s), matrix(r, s), Real(0)};
        auto col_norm = [&](Real t) {
            MatrixC<Real> m(p + r, q);
            m << d.a, t * d.b;
            return spectral_norm<Real>(m);
        };
        auto row_norm = [&](Real t) {
            MatrixC<Real> m(p, q + s);
            m << d.a, t * d.c;
            return spectral_norm<Real>(m);
        };
        d.mu = std::max(col_norm(Real(1)), row_norm(Real(1)));
        auto fit = [&](auto norm_of) {
            Real lo = Real(1), hi = Real(2);
            while (norm_of(hi) < d.mu)
                hi *= Real(2);
            for (int it = 0; it < 200 && hi - lo > std::numeric_limits<Real>::epsilon() * hi; ++it) {
                const Real mid = (lo + hi) / Real(2);
                (norm_of(mid) < d.mu ? lo : hi) = mid;
            }
            return (lo + hi) / Real(2);
        };
        if (col_norm(Real(1)) < d.mu)
            d.b *= fit(col_norm);
        else
            d.c *= fit(row_norm);
        d.mu = std::max(col_norm(Real(1)), row_norm(Real(1)));
        d.z /= spectral_norm<Real>(d.z) * uniform(Real(1), Real(2));
        return d;
    }

    Complex<Real> on_unit_circle() { return std::polar(Real(1), uniform(Real(0), Real(2) * std::numbers::pi_v<Real>)); }

  private:
    std::mt19937_64 engine_;
    std::normal_distribution<Real> normal_;
    std::uniform_real_distribution<Real> unit_{Real(0), Real(1)};
};

} // namespace structbe
