#include "structbe/impl/backerr.tpp"

namespace structbe {

template class MatrixPolynomial<double>;
template class EigenPairApprox<double>;

template MatrixC<double> evaluate(const MatrixPolynomial<double> &, Complex<double>);
template PowerVector<double> power_vector(Complex<double>, int, Ordering);
template double poly_norm(const MatrixPolynomial<double> &, NormKind);
template VectorC<double> even_projection(const VectorC<double> &);
template VectorC<double> odd_projection(const VectorC<double> &);
template MatrixC<double> hamiltonian_j<double>(Index);
template double structure_distance(const MatrixPolynomial<double> &, StructureClass);
template MatrixPolynomial<double> project_to_class(const MatrixPolynomial<double> &, StructureClass);
template MatrixC<double> symmetric_part(const MatrixC<double> &, int, bool);
template VectorC<double> residual(const MatrixPolynomial<double> &, const EigenPairApprox<double> &);
template void require_class(const MatrixPolynomial<double> &, StructureClass);
template double membership_tolerance(const MatrixPolynomial<double> &);

template VectorR<double> pinv_solve(const MatrixR<double> &, const VectorR<double> &, double);
template MatrixR<double> pinv(const MatrixR<double> &, double);
template MatrixC<double> psd_sqrt(const MatrixC<double> &);
template MatrixC<double> psd_inverse_sqrt(const MatrixC<double> &, double);
template double spectral_norm(const MatrixC<double> &);

template double eta_unstructured(const MatrixPolynomial<double> &, const EigenPairApprox<double> &);
template MatrixPolynomial<double> unstructured_perturbation(const MatrixPolynomial<double> &,
                                                           const EigenPairApprox<double> &);
template LambdaBranch classify_lambda<double>(StructureClass, Complex<double>);
template double structured_value(const MatrixPolynomial<double> &, StructureClass, const EigenPairApprox<double> &,
                                 NormKind);
template BackwardErrorResult<double> eta_structured(const MatrixPolynomial<double> &, StructureClass,
                                                    const EigenPairApprox<double> &, NormKind);
template MatrixPolynomial<double> minimal_perturbation(const MatrixPolynomial<double> &, StructureClass,
                                                       const EigenPairApprox<double> &, NormKind);
template MatrixPolynomial<double> existence_perturbation(const MatrixPolynomial<double> &, StructureClass,
                                                         const EigenPairApprox<double> &);
template MatrixC<double> dkw_dilation(const MatrixC<double> &, const MatrixC<double> &, const MatrixC<double> &,
                                      double, const MatrixC<double> &);
template MatrixPolynomial<double> isometry_map(const MatrixPolynomial<double> &, IsometryDirection);
template RHatVector<double> rhat(RHatCase, Complex<double>, int, Complex<double>);
template MatrixR<double> rhat_system(RHatCase, Complex<double>, int);

} // namespace structbe
