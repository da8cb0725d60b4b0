#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace structbe {

enum class VerifyScale { Small, Full };

// Deliberate faults for checking that the battery notices them.
enum class Mutation { None, ConjugateLambda, DropSqrt2 };

std::optional<VerifyScale> parse_scale(std::string_view name);
std::optional<Mutation> parse_mutation(std::string_view name);

struct VerifyConfig {
    std::uint64_t seed = 42;
    VerifyScale scale = VerifyScale::Small;
    Mutation mutation = Mutation::None;
    unsigned threads = 0;
};

struct VerifyRow {
    std::string structure;
    int n = 0;
    int m = 0;
    std::string name;
    double formula = 0;
    double oracle = 0;
    double rel_err = 0;
    double tolerance = 0;

    bool pass() const { return rel_err <= tolerance; }
};

struct VerifyReport {
    std::vector<VerifyRow> rows;

    std::size_t failures() const;
};

VerifyReport run_verify(const VerifyConfig &config);

// CSV with header class,n,m,case,formula,oracle,rel_err at 17 significant digits.
void write_verify_csv(std::ostream &out, const VerifyReport &report);

} // namespace structbe
