#include "structbe/impl/linearize.tpp"

namespace structbe {

std::string_view to_string(BoundFamily f) {
    switch (f) {
    case BoundFamily::Unstructured: return "unstructured";
    case BoundFamily::StructuredLower: return "structured_lower";
    case BoundFamily::SymmetricPair: return "symmetric_pair";
    case BoundFamily::SkewSymmetricPair: return "skew_symmetric_pair";
    case BoundFamily::TEvenParity: return "t_even_parity";
    case BoundFamily::TOddParity: return "t_odd_parity";
    case BoundFamily::TEvenSpectral: return "t_even_spectral";
    case BoundFamily::TOddSpectral: return "t_odd_spectral";
    case BoundFamily::HermitianRealAxis: return "hermitian_real_axis";
    case BoundFamily::HEvenImaginaryAxis: return "h_even_imaginary_axis";
    }
    return "unknown";
}

std::vector<StructureClass> structured_pencil_classes(StructureClass poly_class) {
    using S = StructureClass;
    switch (poly_class) {
    case S::Sym: return {S::Sym};
    case S::SkewSym: return {S::SkewSym};
    case S::TEven:
    case S::TOdd: return {S::TEven, S::TOdd};
    case S::Herm:
    case S::SkewHerm: return {S::Herm, S::SkewHerm};
    case S::HEven:
    case S::HOdd: return {S::HEven, S::HOdd};
    case S::HamiltonianEO: return {};
    }
    return {};
}

template VectorR<double> sigma_diagonal<double>(int);
template Pencil<double> companion_first(const MatrixPolynomial<double> &);
template Pencil<double> l1_pencil(const MatrixPolynomial<double> &, const VectorC<double> &, const MatrixC<double> &);
template Pencil<double> dl_pencil(const MatrixPolynomial<double> &, const VectorC<double> &);
template std::optional<Pencil<double>> try_structured_pencil(const MatrixPolynomial<double> &, StructureClass,
                                                             StructureClass, const VectorC<double> &);
template Pencil<double> structured_pencil(const MatrixPolynomial<double> &, StructureClass, StructureClass,
                                          const VectorC<double> &);
template double membership_residual(const MatrixPolynomial<double> &, const Pencil<double> &, Complex<double>);
template double left_membership_residual(const MatrixPolynomial<double> &, const Pencil<double> &, Complex<double>);
template bool admissible_ansatz(StructureClass, StructureClass, const VectorC<double> &, int);
template EigenPairApprox<double> lift(const EigenPairApprox<double> &, int);
template double eta_pencil(const Pencil<double> &, const EigenPairApprox<double> &);
template BackwardErrorResult<double> eta_pencil_structured(const Pencil<double> &, StructureClass,
                                                           const EigenPairApprox<double> &, NormKind);
template std::vector<RatioReport<double>> ratio_reports(const MatrixPolynomial<double> &, StructureClass,
                                                        const Pencil<double> &, const EigenPairApprox<double> &,
                                                        NormKind);
template Recommendation<double> recommend_linearization<double>(StructureClass, Complex<double>, int);
template Recommendation<double> recommend_linearization(const MatrixPolynomial<double> &, StructureClass,
                                                        const EigenPairApprox<double> &, const VectorC<double> &);
template std::pair<VectorR<double>, VectorR<double>> advisory_vectors(Complex<double>, Complex<double>);

} // namespace structbe
