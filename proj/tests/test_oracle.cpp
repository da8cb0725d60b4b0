#include "helpers.hpp"
#include "structbe/backerr.hpp"
#include "structbe/oracle.hpp"

using namespace structbe;
using namespace structbe::testing;

TEST(Oracle, ParametrizationIsOrthonormalAndStructured) {
    for (S s : kAllClasses) {
        const Index n = 4;
        const int m = 2;
        const auto par = real_parametrization<double>(s, n, m);
        const Index d = par.dimension();
        ASSERT_GT(d, 0);
        MatrixR<double> gram(d, d);
        for (Index a = 0; a < d; ++a)
            for (Index b = 0; b < d; ++b) {
                const auto &ea = par.basis[a], &eb = par.basis[b];
                gram(a, b) = ea.degree == eb.degree ? (ea.matrix.adjoint() * eb.matrix).trace().real() : 0.0;
            }
        EXPECT_LT((gram - MatrixR<double>::Identity(d, d)).norm(), 1e-13) << to_string(s);
        for (Index a = 0; a < d; ++a) {
            VectorR<double> theta = VectorR<double>::Zero(d);
            theta(a) = 1;
            EXPECT_LT(structure_distance(par.assemble(theta, n, m), s), 1e-15) << to_string(s);
        }
    }
}

TEST(Oracle, ParametrizationDimensions) {
    const Index n = 3;
    const int m = 2;
    EXPECT_EQ(real_parametrization<double>(S::Sym, n, m).dimension(), (m + 1) * n * (n + 1));
    EXPECT_EQ(real_parametrization<double>(S::SkewSym, n, m).dimension(), (m + 1) * n * (n - 1));
    EXPECT_EQ(real_parametrization<double>(S::Herm, n, m).dimension(), (m + 1) * n * n);
}

TEST(Oracle, ZeroResidual) {
    Sampler<double> g(31);
    const Poly p = g.structured(3, 1, S::Sym);
    const Vec x = g.unit_vector(3);
    // P_x^T A_0 P_x is symmetric and annihilates x, so (0, x) is an exact eigenpair.
    const Mat px = Mat::Identity(3, 3) - x * x.adjoint();
    const Poly q = poly({Mat(px.transpose() * p[0] * px), p[1]});
    ASSERT_LT(structure_distance(q, S::Sym), 1e-14);
    EXPECT_LT(frobenius_oracle(q, S::Sym, Pair(C(0), x)), 1e-14);
}

TEST(Oracle, MatchesClosedFormsAllClasses) {
    Sampler<double> g(32);
    for (S s : kAllClasses)
        for (int t = 0; t < 50; ++t) {
            const int n = dim_for(g, s), m = g.integer(1, 5);
            const Poly p = g.structured(n, m, s);
            const Pair pair(lambda_for(g, s, t % 3), g.unit_vector(n));
            EXPECT_LT(rel_err(structured_value(p, s, pair, NormKind::Frobenius), frobenius_oracle(p, s, pair)), 1e-10)
                << to_string(s) << " t=" << t;
        }
}

TEST(Oracle, SymmetricClosedForm) {
    Sampler<double> g(33);
    const Poly p = g.structured(4, 3, S::Sym);
    const Pair pair(g.complex_normal(), g.unit_vector(4));
    const Vec r = residual(p, pair);
    const double xr = std::norm((pair.x().transpose() * r)(0));
    const double expect =
        std::sqrt(2 * r.squaredNorm() - xr) / power_vector(pair.lambda(), 3, Ordering::Ascending).norm();
    EXPECT_LT(rel_err(frobenius_oracle(p, S::Sym, pair), expect), 1e-10);
}

TEST(Oracle, HermOffAxis) {
    Sampler<double> g(34);
    const Poly p = g.structured(3, 2, S::Herm);
    const Pair pair(C(1, 1), g.unit_vector(3));
    EXPECT_LT(rel_err(frobenius_oracle(p, S::Herm, pair), structured_value(p, S::Herm, pair, NormKind::Frobenius)),
              1e-10);
}

TEST(Oracle, FeasibleSamplesNeverBeatTheMinimum) {
    Sampler<double> g(35);
    for (S s : kAllClasses)
        for (NormKind kind : {NormKind::Frobenius, NormKind::Spectral})
            for (SampleFamily fam : {SampleFamily::Projector, SampleFamily::NullSpace}) {
                const int n = dim_for(g, s), m = g.integer(1, 4);
                const Poly p = g.structured(n, m, s);
                const Pair pair(lambda_for(g, s, g.integer(0, 2)), g.unit_vector(n));
                const double v = structured_value(p, s, pair, kind);
                for (double x : feasible_sample(p, s, pair, kind, 100, g.next_seed(), fam))
                    EXPECT_GE(x, v - 1e-10) << to_string(s) << " " << to_string(kind);
            }
}

// Frobenius minimizers are unique: every other feasible structured perturbation is strictly longer.
TEST(Oracle, FrobeniusUniqueness) {
    Sampler<double> g(36);
    for (S s : {S::Sym, S::TEven, S::TOdd, S::Herm, S::HEven}) {
        const int n = 4, m = 2;
        const Poly p = g.structured(n, m, s);
        const Pair pair(g.complex_normal(), g.unit_vector(n));
        const double v = structured_value(p, s, pair, NormKind::Frobenius);
        for (double x : feasible_sample(p, s, pair, NormKind::Frobenius, 50, g.next_seed()))
            EXPECT_GT(x, v * (1 + 1e-9)) << to_string(s);
    }
}
