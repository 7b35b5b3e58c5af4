#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace unital {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Every state, gate and Kraus operator in
/// the library is carried by this type. Dimensions are always positive.
class ComplexMatrix {
 public:
  /// Zero matrix of the given shape.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  /// Column vector with the given entries.
  static ComplexMatrix column_vector(std::span<const Complex> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix column(std::size_t c) const;
  Complex trace() const;
  double frobenius_norm() const;
  /// True when every real and imaginary component is finite.
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex s);

/// Kronecker product with block (i, j) equal to a(i, j) * b.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
/// Left fold of tensor() over factors, leftmost factor first.
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);

/// |v><v| for a column vector v.
ComplexMatrix outer(const ComplexMatrix& ket);
/// Diagonal matrix with real entries.
ComplexMatrix diagonal(std::span<const double> values);

/// ||a - b||_F. Throws DimensionMismatch on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
/// ||m - I||_F. Throws NotSquare.
double defect_from_identity(const ComplexMatrix& m);
/// ||m - m^dagger||_F. Throws NotSquare.
double hermiticity_defect(const ComplexMatrix& m);
/// ||u^dagger u - I||_F.
double unitarity_defect(const ComplexMatrix& u);

/// Reorders the tensor factors of a square operator on a product space.
/// Factor k of the result is factor order[k] of the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> order);

/// Partial trace of a square operator, keeping the subsystems in `keep`
/// (taken in ascending index order). Index 0 is the leftmost factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Orthonormal basis stored as the columns of a unitary matrix.
class Basis {
 public:
  /// Throws NotUnitary when ||B^dagger B - I||_F exceeds 1e-10.
  explicit Basis(ComplexMatrix vectors);

  static Basis computational(std::size_t dim);

  std::size_t dim() const noexcept { return vectors_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return vectors_; }
  ComplexMatrix vector(std::size_t j) const { return vectors_.column(j); }

 private:
  ComplexMatrix vectors_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  /// Admission tolerances.
  static constexpr double kHermitianTol = 1e-12;  // scaled by dim
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdTol = 1e-10;

  /// Validates all three invariants; throws InvalidState (or NotSquare).
  /// The stored matrix is the Hermitian part of the input.
  explicit DensityMatrix(ComplexMatrix mat);

  static DensityMatrix from_ket(const ComplexMatrix& ket);
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  /// Tr(rho^2).
  double purity() const;

 private:
  ComplexMatrix mat_;
};

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

struct EigenDecomposition {
  /// Sorted descending.
  std::vector<double> values;
  /// Column j pairs with values[j].
  Basis vectors;
};

/// Eigendecomposition of a Hermitian matrix. Throws NotHermitian when
/// ||h - h^dagger||_F > 1e-10 * dim.
///
/// Each eigenvector is phase-fixed so that its largest-modulus component
/// (lowest index on ties) is real and positive. Exactly diagonal inputs
/// therefore return plain computational basis vectors.
EigenDecomposition hermitian_eig(const ComplexMatrix& h);

}  // namespace unital
