#include "structbe/impl/oracle.tpp"

namespace structbe {

template struct RealParametrization<double>;
template RealParametrization<double> real_parametrization<double>(StructureClass, Index, int);
template double frobenius_oracle(const MatrixPolynomial<double> &, StructureClass, const EigenPairApprox<double> &);
template std::vector<double> feasible_sample(const MatrixPolynomial<double> &, StructureClass,
                                             const EigenPairApprox<double> &, NormKind, int, std::uint64_t,
                                             SampleFamily);

} // namespace structbe
