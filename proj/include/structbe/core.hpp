#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace structbe {

using Eigen::Index;

template <typename Real> using Complex = std::complex<Real>;
template <typename Real>
using MatrixC = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real> using VectorC = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;
template <typename Real> using MatrixR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real> using VectorR = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Raised when a polynomial does not belong to the class an operation requires.
class StructureMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Raised when an ansatz vector cannot produce the requested pencil structure.
class InadmissibleAnsatz : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class StructureClass { Sym, SkewSym, Herm, SkewHerm, TEven, TOdd, HEven, HOdd, HamiltonianEO };

inline constexpr StructureClass kAllClasses[] = {
    StructureClass::Sym,   StructureClass::SkewSym, StructureClass::Herm,
    StructureClass::SkewHerm, StructureClass::TEven, StructureClass::TOdd,
    StructureClass::HEven, StructureClass::HOdd,    StructureClass::HamiltonianEO};

enum class NormKind { Frobenius, Spectral };
enum class Ordering { Ascending, Descending };

std::string_view to_string(StructureClass s);
std::string_view to_string(NormKind k);
std::optional<StructureClass> parse_structure(std::string_view name);

// Classes whose conditions use the plain transpose (as opposed to the conjugate transpose).
constexpr bool is_transpose_family(StructureClass s) {
    return s == StructureClass::Sym || s == StructureClass::SkewSym || s == StructureClass::TEven ||
           s == StructureClass::TOdd;
}

// +1 when coefficient j satisfies B^T = B (resp. B^H = B), -1 for the skew variant.
// For HamiltonianEO the pattern refers to B = J*A_j.
constexpr int coefficient_sign(StructureClass s, int j) {
    const bool even = (j % 2) == 0;
    switch (s) {
    case StructureClass::Sym:
    case StructureClass::Herm: return 1;
    case StructureClass::SkewSym:
    case StructureClass::SkewHerm: return -1;
    case StructureClass::TEven:
    case StructureClass::HEven:
    case StructureClass::HamiltonianEO: return even ? 1 : -1;
    case StructureClass::TOdd:
    case StructureClass::HOdd: return even ? -1 : 1;
    }
    return 1;
}

template <typename Real> class MatrixPolynomial {
  public:
    MatrixPolynomial() = default;
    explicit MatrixPolynomial(std::vector<MatrixC<Real>> coeffs);

    static MatrixPolynomial zero(Index n, int m);

    Index dim() const { return coeffs_.empty() ? 0 : coeffs_.front().rows(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const MatrixC<Real> &operator[](int j) const { return coeffs_[static_cast<size_t>(j)]; }
    const std::vector<MatrixC<Real>> &coeffs() const { return coeffs_; }

    MatrixPolynomial operator+(const MatrixPolynomial &other) const;
    MatrixPolynomial operator-(const MatrixPolynomial &other) const;
    MatrixPolynomial operator*(const Complex<Real> &a) const;

    // Applies f to every coefficient; f receives (j, A_j).
    template <typename F> MatrixPolynomial map(F &&f) const {
        std::vector<MatrixC<Real>> out;
        out.reserve(coeffs_.size());
        for (int j = 0; j <= degree(); ++j)
            out.emplace_back(f(j, coeffs_[static_cast<size_t>(j)]));
        return MatrixPolynomial(std::move(out));
    }

  private:
    std::vector<MatrixC<Real>> coeffs_;
};

template <typename Real>
MatrixPolynomial<Real> operator*(const Complex<Real> &a, const MatrixPolynomial<Real> &p) {
    return p * a;
}

enum class NormalizePolicy { Renormalize, Strict };

// Approximate eigenpair with a unit-norm vector.
template <typename Real> class EigenPairApprox {
  public:
    EigenPairApprox(Complex<Real> lambda, VectorC<Real> x,
                    NormalizePolicy policy = NormalizePolicy::Renormalize);

    const Complex<Real> &lambda() const { return lambda_; }
    const VectorC<Real> &x() const { return x_; }
    // True when the input vector's norm was off by more than 1e-8.
    bool renormalized() const { return renormalized_; }

  private:
    Complex<Real> lambda_;
    VectorC<Real> x_;
    bool renormalized_ = false;
};

} // namespace structbe
