#include <sstream>

#include <gtest/gtest.h>

#include "structbe/verify.hpp"

using namespace structbe;

namespace {

std::string csv_of(const VerifyConfig &c) {
    std::ostringstream out;
    write_verify_csv(out, run_verify(c));
    return out.str();
}

} // namespace

TEST(Verify, ParsesNames) {
    EXPECT_EQ(parse_scale("small"), VerifyScale::Small);
    EXPECT_EQ(parse_scale("full"), VerifyScale::Full);
    EXPECT_FALSE(parse_scale("huge"));
    EXPECT_EQ(parse_mutation("conj_lambda"), Mutation::ConjugateLambda);
    EXPECT_FALSE(parse_mutation("flip"));
}

TEST(Verify, DefaultRunPassesAndIsDeterministic) {
    VerifyConfig c;
    c.threads = 1;
    const auto report = run_verify(c);
    EXPECT_EQ(report.failures(), 0u);
    EXPECT_GT(report.rows.size(), 10000u);

    std::ostringstream a;
    write_verify_csv(a, report);
    c.threads = 3;
    EXPECT_EQ(a.str(), csv_of(c));
    EXPECT_EQ(a.str().substr(0, a.str().find('\n')), "class,n,m,case,formula,oracle,rel_err");
}

TEST(Verify, SeedChangesTheSample) {
    VerifyConfig a, b;
    b.seed = 7;
    EXPECT_NE(csv_of(a), csv_of(b));
}

TEST(Verify, MutationsAreDetected) {
    for (Mutation mu : {Mutation::ConjugateLambda, Mutation::DropSqrt2}) {
        VerifyConfig c;
        c.mutation = mu;
        const auto report = run_verify(c);
        std::size_t bad_oracle = 0;
        for (const auto &r : report.rows)
            if (!r.pass()) {
                EXPECT_EQ(r.name, "frobenius_oracle");
                ++bad_oracle;
            }
        EXPECT_GT(bad_oracle, 100u);
    }
}
