#include <array>
#include <utility>

#include "structbe/backerr.hpp"

namespace structbe {

namespace {
constexpr std::array<std::pair<StructureClass, std::string_view>, 9> kNames{{
    {StructureClass::Sym, "sym"},
    {StructureClass::SkewSym, "skew_sym"},
    {StructureClass::Herm, "herm"},
    {StructureClass::SkewHerm, "skew_herm"},
    {StructureClass::TEven, "t_even"},
    {StructureClass::TOdd, "t_odd"},
    {StructureClass::HEven, "h_even"},
    {StructureClass::HOdd, "h_odd"},
    {StructureClass::HamiltonianEO, "hamiltonian"},
}};
} // namespace

std::string_view to_string(StructureClass s) {
    for (const auto &[c, name] : kNames)
        if (c == s)
            return name;
    return "unknown";
}

std::optional<StructureClass> parse_structure(std::string_view name) {
    for (const auto &[c, n] : kNames)
        if (n == name)
            return c;
    return std::nullopt;
}

std::string_view to_string(NormKind k) { return k == NormKind::Frobenius ? "frobenius" : "spectral"; }

std::string_view to_string(LambdaBranch b) {
    switch (b) {
    case LambdaBranch::Generic: return "generic";
    case LambdaBranch::RealAxis: return "real_axis";
    case LambdaBranch::ImaginaryAxis: return "imaginary_axis";
    case LambdaBranch::Zero: return "zero";
    }
    return "generic";
}

} // namespace structbe
