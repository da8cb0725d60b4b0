#include "helpers.hpp"

using namespace structbe;
using namespace structbe::testing;

TEST(Polycore, EvaluateSmallCases) {
    const Mat id = Mat::Identity(2, 2);
    EXPECT_EQ(evaluate(poly({Mat::Zero(2, 2), id}), C(0)).norm(), 0.0);
    EXPECT_LT((evaluate(poly({id, id, id}), C(2)) - 7.0 * id).norm(), 1e-15);
}

TEST(Polycore, HornerMatchesPowerSum) {
    Sampler<double> g(1);
    for (int t = 0; t < 200; ++t) {
        const Poly p = g.polynomial(g.integer(1, 4), g.integer(0, 5));
        const Poly q = p * C(10.0 / poly_norm(p, NormKind::Frobenius));
        const C z = g.in_annulus(0.0, 2.0);
        Mat naive = Mat::Zero(q.dim(), q.dim());
        for (int j = 0; j <= q.degree(); ++j)
            naive += std::pow(z, j) * q[j];
        EXPECT_LT((evaluate(q, z) - naive).norm(), 1e-12 * naive.norm());
    }
}

TEST(Polycore, PowerVectors) {
    EXPECT_EQ(power_vector(C(0), 2, Ordering::Ascending).entries, Vec((Vec(3) << 1, 0, 0).finished()));
    EXPECT_DOUBLE_EQ(power_vector(C(1), 3, Ordering::Ascending).norm(), 2.0);
    const auto p = power_vector(C(2), 2, Ordering::Ascending);
    EXPECT_EQ(p.entries, Vec((Vec(3) << 1, 2, 4).finished()));
    EXPECT_DOUBLE_EQ(p.norm(), std::sqrt(21.0));
    const auto d = power_vector(C(0, 2), 2, Ordering::Descending);
    ASSERT_EQ(d.entries.size(), 3);
    EXPECT_EQ(d.entries(0), C(-4, 0));
    EXPECT_EQ(d.entries(2), C(1, 0));
}

TEST(Polycore, PolyNorms) {
    const Mat id = Mat::Identity(2, 2);
    EXPECT_EQ(poly_norm(Poly::zero(3, 2), NormKind::Frobenius), 0.0);
    EXPECT_DOUBLE_EQ(poly_norm(poly({id, id}), NormKind::Frobenius), 2.0);
    EXPECT_DOUBLE_EQ(poly_norm(poly({id, id}), NormKind::Spectral), std::sqrt(2.0));

    Sampler<double> g(2);
    const Poly p = g.polynomial(3, 2);
    double f = 0, s = 0;
    for (int j = 0; j <= 2; ++j) {
        f += p[j].squaredNorm();
        const double sv = Eigen::JacobiSVD<Mat>(p[j]).singularValues()(0);
        s += sv * sv;
    }
    EXPECT_LT(rel_err(poly_norm(p, NormKind::Frobenius), std::sqrt(f)), 1e-14);
    EXPECT_LT(rel_err(poly_norm(p, NormKind::Spectral), std::sqrt(s)), 1e-14);
}

TEST(Polycore, EvenProjection) {
    const Vec w = (Vec(4) << 1, 2, 3, 4).finished();
    EXPECT_EQ(even_projection(w), Vec((Vec(4) << 1, 0, 3, 0).finished()));
    EXPECT_EQ(odd_projection(w), Vec((Vec(4) << 0, 2, 0, 4).finished()));
    const Vec w3 = (Vec(3) << 1, 2, 3).finished();
    EXPECT_EQ(even_projection(w3), Vec((Vec(3) << 1, 0, 3).finished()));
    EXPECT_EQ(even_projection(Vec(Vec::Zero(5))).norm(), 0.0);

    Sampler<double> g(3);
    for (int t = 0; t < 50; ++t) {
        const Vec v = g.matrix(g.integer(1, 8), 1);
        EXPECT_NEAR(even_projection(v).squaredNorm() + odd_projection(v).squaredNorm(), v.squaredNorm(),
                    1e-13 * v.squaredNorm());
    }
}

TEST(Polycore, EvenProjectionHalvesOddDegreeOnUnitCircle) {
    Sampler<double> g(4);
    for (int m = 1; m <= 9; m += 2) {
        const Vec lam = power_vector(g.on_unit_circle(), m, Ordering::Ascending).entries;
        EXPECT_NEAR(even_projection(lam).squaredNorm(), lam.squaredNorm() / 2, 1e-13);
    }
}

TEST(Polycore, StructureDistanceClosedForm) {
    const Poly p = poly({mat2(0, 1, 0, 0)});
    EXPECT_NEAR(structure_distance(p, S::Sym), 1 / std::sqrt(2.0), 1e-15);
    const Poly q = project_to_class(poly({mat2(1, 2, 0, 1)}), S::Sym);
    EXPECT_LT((q[0] - mat2(1, 1, 1, 1)).norm(), 1e-15);
}

TEST(Polycore, ProjectionProperties) {
    Sampler<double> g(5);
    for (S s : kAllClasses)
        for (int t = 0; t < 10; ++t) {
            const Index n = 2 * g.integer(1, 3);
            const Poly p = g.polynomial(n, g.integer(0, 4));
            const Poly q = project_to_class(p, s);
            EXPECT_LE(structure_distance(q, s), 1e-14 * poly_norm(p, NormKind::Frobenius)) << to_string(s);
            EXPECT_LE(poly_norm(project_to_class(q, s) - q, NormKind::Frobenius),
                      1e-14 * poly_norm(p, NormKind::Frobenius));
            EXPECT_NEAR(structure_distance(p, s), poly_norm(p - q, NormKind::Frobenius),
                        1e-12 * poly_norm(p, NormKind::Frobenius))
                << to_string(s);
        }
}

TEST(Polycore, HEvenProjectionIsNearestPerCoefficient) {
    Sampler<double> g(6);
    const Poly p = g.polynomial(3, 3);
    const Poly q = project_to_class(p, S::HEven);
    for (int j = 0; j <= 3; ++j) {
        const Mat expect = j % 2 == 0 ? Mat((p[j] + p[j].adjoint()) / 2.0) : Mat((p[j] - p[j].adjoint()) / 2.0);
        EXPECT_LT((q[j] - expect).norm(), 1e-15);
    }
}

TEST(Polycore, Residual) {
    const Mat id = Mat::Identity(2, 2);
    const Vec e1 = (Vec(2) << 1, 0).finished();
    EXPECT_LT((residual(poly({-id, id}), Pair(C(0), e1)) - e1).norm(), 1e-16);

    Sampler<double> g(7);
    const Poly p = g.polynomial(4, 3);
    const Pair pair(g.complex_normal(), g.unit_vector(4));
    EXPECT_LT((residual(p, pair) + evaluate(p, pair.lambda()) * pair.x()).norm(), 1e-14);
}

TEST(Polycore, PairNormalization) {
    const Vec x = (Vec(2) << 3, 4).finished();
    const Pair pair(C(1), x);
    EXPECT_TRUE(pair.renormalized());
    EXPECT_NEAR(pair.x().norm(), 1.0, 1e-15);
    EXPECT_THROW(Pair(C(1), x, NormalizePolicy::Strict), std::invalid_argument);
    EXPECT_THROW(Pair(C(1), Vec(Vec::Zero(2))), std::invalid_argument);
}

TEST(Polycore, HamiltonianNeedsEvenDimension) {
    Sampler<double> g(8);
    EXPECT_THROW(require_class(g.polynomial(3, 1), S::HamiltonianEO), StructureMismatch);
    EXPECT_THROW(require_class(g.polynomial(2, 1), S::Sym), StructureMismatch);
    EXPECT_NO_THROW(require_class(g.structured(4, 2, S::HamiltonianEO), S::HamiltonianEO));
}

// Eigenvalue symmetries of each class on computed spectra.
TEST(Polycore, SpectralSymmetries) {
    Sampler<double> g(9);
    auto image = [](const std::vector<C> &ev, auto f) {
        std::vector<C> out;
        for (const C &z : ev)
            out.push_back(f(z));
        return out;
    };
    for (S s : kAllClasses)
        for (int t = 0; t < 5; ++t) {
            const Index n = 2 * g.integer(1, 2);
            const Poly p = g.structured(n, g.integer(1, 3), s);
            const auto ev = eigenvalues(p);
            std::vector<C> mapped;
            switch (s) {
            case S::Sym:
            case S::SkewSym: continue;
            case S::Herm:
            case S::SkewHerm: mapped = image(ev, [](C z) { return std::conj(z); }); break;
            case S::TEven:
            case S::TOdd: mapped = image(ev, [](C z) { return -z; }); break;
            default: mapped = image(ev, [](C z) { return -std::conj(z); }); break;
            }
            EXPECT_TRUE(set_match(mapped, ev, 1e-8)) << to_string(s);
        }
}
