#include "unital/quantumness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "unital/errors.hpp"

namespace unital {

namespace {

constexpr double kSupportThreshold = 1e-10;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto eig = hermitian_eig(rho.matrix());
  double s = 0.0;
  for (double lambda : eig.values) s -= xlog2x(std::clamp(lambda, 0.0, 1.0));
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DimensionMismatch("relative_entropy: dims " + std::to_string(rho.dim()) + " and " +
                            std::to_string(sigma.dim()));
  }
  const auto eig = hermitian_eig(sigma.matrix());
  // Tr(rho log2 sigma) = sum_k <v_k|rho|v_k> log2 mu_k
  double cross = 0.0;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    const ComplexMatrix v = eig.vectors.vector(k);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    const double mu = eig.values[k];
    if (mu <= kSupportThreshold) {
      if (weight > kSupportThreshold) return std::numeric_limits<double>::infinity();
      continue;
    }
    cross += weight * std::log2(mu);
  }
  return -von_neumann_entropy(rho) - cross;
}

DensityMatrix dephase(const DensityMatrix& rho, const Basis& basis) {
  if (rho.dim() != basis.dim()) {
    throw DimensionMismatch("dephase: state dim " + std::to_string(rho.dim()) + ", basis dim " +
                            std::to_string(basis.dim()));
  }
  const ComplexMatrix& b = basis.matrix();
  const ComplexMatrix in_basis = b.adjoint() * rho.matrix() * b;
  ComplexMatrix diag(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < rho.dim(); ++i) diag(i, i) = in_basis(i, i).real();
  return DensityMatrix(b * diag * b.adjoint());
}

std::string_view to_string(ReqRule rule) {
  return rule == ReqRule::diagonal_rule ? "diagonal_rule" : "maximally_mixed_rule";
}

ReqResult req(const DensityMatrix& rho, const Basis& basis, double diag_tol) {
  const DensityMatrix dephased = dephase(rho, basis);
  if (frobenius_distance(rho.matrix(), dephased.matrix()) <= diag_tol) {
    return ReqResult{0.0, rho, ReqRule::diagonal_rule};
  }
  DensityMatrix sigma = DensityMatrix::maximally_mixed(rho.dim());
  const double value = std::max(relative_entropy(rho, sigma), 0.0);
  return ReqResult{value, std::move(sigma), ReqRule::maximally_mixed_rule};
}

}  // namespace unital
