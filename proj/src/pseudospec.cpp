#include "structbe/impl/pseudospec.tpp"

namespace structbe {

unsigned thread_budget() {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("STRUCTBE_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return std::min<unsigned>(hw, unsigned(v));
    }
    return hw;
}

template double eta_eigenvalue(const MatrixPolynomial<double> &, Complex<double>);
template Interval<double> eta_eigenvalue_structured(const MatrixPolynomial<double> &, StructureClass, Complex<double>,
                                                    NormKind);
template TakagiFactorization<double> takagi(const MatrixC<double> &);
template TakagiFactorization<double> takagi_skew(const MatrixC<double> &);
template MatrixC<double> takagi_reconstruct(const TakagiFactorization<double> &);
template MatrixPolynomial<double> minimal_eigenvalue_perturbation(const MatrixPolynomial<double> &, StructureClass,
                                                                  Complex<double>, NormKind);
template struct PseudospectrumGrid<double>;
template PseudospectrumGrid<double> pseudospectrum_grid(const MatrixPolynomial<double> &, const GridRegion &, int, int,
                                                        std::optional<StructureClass>, NormKind, unsigned);

} // namespace structbe
