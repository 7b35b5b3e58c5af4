#include "unital/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "unital/errors.hpp"

namespace unital {

namespace {

void require_positive_shape(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw InvalidArgument("matrix dimensions must be positive");
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) {
    throw NotSquare(std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()));
  }
}

std::size_t product(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

// Mixed-radix digits of `index`, most significant (leftmost factor) first.
void digits_of(std::size_t index, std::span<const std::size_t> dims, std::vector<std::size_t>& out) {
  out.resize(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    out[k] = index % dims[k];
    index /= dims[k];
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  require_positive_shape(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_positive_shape(rows, cols);
  if (entries_.size() != rows * cols) {
    throw DimensionMismatch("entry count " + std::to_string(entries_.size()) + " does not match " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionMismatch("ragged row list");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::column_vector(std::span<const Complex> entries) {
  return ComplexMatrix(entries.size(), 1, std::vector<Complex>(entries.begin(), entries.end()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::column(std::size_t c) const {
  ComplexMatrix out(rows_, 1);
  for (std::size_t r = 0; r < rows_; ++r) out(r, 0) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  require_square(*this, "trace");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("matrix product: " + std::to_string(a.cols()) + " columns vs " +
                            std::to_string(b.rows()) + " rows");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("tensor of an empty factor list");
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = tensor(out, factors[i]);
  return out;
}

ComplexMatrix outer(const ComplexMatrix& ket) {
  if (ket.cols() != 1) throw DimensionMismatch("outer: expected a column vector");
  return ket * ket.adjoint();
}

ComplexMatrix diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.entries()[i] - b.entries()[i]);
  return std::sqrt(s);
}

double defect_from_identity(const ComplexMatrix& m) {
  require_square(m, "defect_from_identity");
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      s += std::norm(m(r, c) - (r == c ? Complex{1.0} : Complex{}));
  return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix& m) {
  require_square(m, "hermiticity_defect");
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += std::norm(m(r, c) - std::conj(m(c, r)));
  return std::sqrt(s);
}

double unitarity_defect(const ComplexMatrix& u) {
  require_square(u, "unitarity_defect");
  return defect_from_identity(u.adjoint() * u);
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> order) {
  require_square(m, "permute_subsystems");
  if (product(dims) != m.rows()) {
    throw DimensionMismatch("permute_subsystems: subsystem dims do not multiply to " +
                            std::to_string(m.rows()));
  }
  if (order.size() != dims.size()) {
    throw InvalidArgument("permute_subsystems: order must name every subsystem once");
  }
  std::vector<bool> seen(dims.size(), false);
  for (auto k : order) {
    if (k >= dims.size() || seen[k]) {
      throw InvalidArgument("permute_subsystems: order is not a permutation");
    }
    seen[k] = true;
  }

  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < order.size(); ++k) new_dims[k] = dims[order[k]];

  const std::size_t n = m.rows();
  std::vector<std::size_t> map(n);
  std::vector<std::size_t> digits;
  for (std::size_t i = 0; i < n; ++i) {
    digits_of(i, dims, digits);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < order.size(); ++k) idx = idx * new_dims[k] + digits[order[k]];
    map[i] = idx;
  }

  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  require_square(m, "partial_trace");
  if (dims.empty() || product(dims) != m.rows()) {
    throw DimensionMismatch("partial_trace: subsystem dims do not multiply to " +
                            std::to_string(m.rows()));
  }
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<bool> kept(dims.size(), false);
  for (auto k : keep) {
    if (k >= dims.size()) {
      throw InvalidArgument("partial_trace: subsystem index " + std::to_string(k) + " out of range");
    }
    kept[k] = true;
  }

  std::size_t kept_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (kept[k]) kept_dim *= dims[k];

  const std::size_t n = m.rows();
  std::vector<std::size_t> kept_index(n), traced_index(n);
  std::vector<std::size_t> digits;
  for (std::size_t i = 0; i < n; ++i) {
    digits_of(i, dims, digits);
    std::size_t ki = 0, ti = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      if (kept[k])
        ki = ki * dims[k] + digits[k];
      else
        ti = ti * dims[k] + digits[k];
    }
    kept_index[i] = ki;
    traced_index[i] = ti;
  }

  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (traced_index[r] == traced_index[c]) out(kept_index[r], kept_index[c]) += m(r, c);
  return out;
}

Basis::Basis(ComplexMatrix vectors) : vectors_(std::move(vectors)) {
  require_square(vectors_, "Basis");
  const double defect = unitarity_defect(vectors_);
  if (!(defect <= 1e-10)) {
    throw NotUnitary("basis vectors are not orthonormal (defect " + std::to_string(defect) + ")");
  }
}

Basis Basis::computational(std::size_t dim) { return Basis(ComplexMatrix::identity(dim)); }

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  require_square(mat_, "DensityMatrix");
  if (!mat_.all_finite()) throw InvalidState("density matrix has non-finite entries");
  const double d = static_cast<double>(mat_.rows());
  const double herm = hermiticity_defect(mat_);
  if (!(herm <= kHermitianTol * d)) {
    throw InvalidState("density matrix is not Hermitian (defect " + std::to_string(herm) + ")");
  }
  // Store the exact Hermitian part so downstream eigen-solves see a clean input.
  ComplexMatrix h = mat_.adjoint();
  h += mat_;
  h *= 0.5;
  mat_ = std::move(h);
  const Complex tr = mat_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTol)) {
    throw InvalidState("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const auto eig = hermitian_eig(mat_);
  if (!(eig.values.back() >= -kPsdTol)) {
    throw InvalidState("density matrix has negative eigenvalue " + std::to_string(eig.values.back()));
  }
}

DensityMatrix DensityMatrix::from_ket(const ComplexMatrix& ket) {
  const double norm = ket.frobenius_norm();
  if (!(std::abs(norm - 1.0) <= 1e-10)) {
    throw InvalidState("ket is not normalized (norm " + std::to_string(norm) + ")");
  }
  return DensityMatrix(outer(ket));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(std::move(m));
}

double DensityMatrix::purity() const {
  double s = 0.0;
  for (const auto& z : mat_.entries()) s += std::norm(z);  // Tr(rho^2) = ||rho||_F^2 for Hermitian rho
  return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  return DensityMatrix(partial_trace(rho.matrix(), dims, keep));
}

EigenDecomposition hermitian_eig(const ComplexMatrix& h) {
  require_square(h, "hermitian_eig");
  const std::size_t n = h.rows();
  const double herm = hermiticity_defect(h);
  if (!(herm <= 1e-10 * static_cast<double>(n))) {
    throw NotHermitian("hermitian_eig: input is not Hermitian (defect " + std::to_string(herm) + ")");
  }

  Eigen::MatrixXcd m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = h(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw Error("hermitian_eig: eigen-solver did not converge");

  // Eigen returns ascending values; walk backwards for a descending order.
  std::vector<double> values(n);
  ComplexMatrix vectors(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto src = static_cast<Eigen::Index>(n - 1 - j);
    values[j] = solver.eigenvalues()(src);
    auto v = solver.eigenvectors().col(src);

    std::size_t pivot = 0;
    double best = -1.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double mag = std::abs(v(static_cast<Eigen::Index>(r)));
      if (mag > best + 1e-12) {
        best = mag;
        pivot = r;
      }
    }
    const Complex p = v(static_cast<Eigen::Index>(pivot));
    const Complex phase = std::conj(p) / std::abs(p);
    for (std::size_t r = 0; r < n; ++r) vectors(r, j) = v(static_cast<Eigen::Index>(r)) * phase;
    vectors(pivot, j) = std::abs(p);
  }
  return EigenDecomposition{std::move(values), Basis(std::move(vectors))};
}

}  // namespace unital
