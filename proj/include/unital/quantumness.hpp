#pragma once

#include <string_view>

#include "unital/linalg.hpp"

namespace unital {

/// -sum lambda log2 lambda over the eigenvalues of rho, in bits.
double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho || sigma) = Tr(rho log2 rho) - Tr(rho log2 sigma), in bits.
/// Returns +infinity when rho has weight outside the support of sigma
/// (eigenvalues <= 1e-10 count as outside). Throws DimensionMismatch.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Removes the coherences of rho in `basis` and returns the result in the
/// original frame: B diag(B^dagger rho B) B^dagger.
DensityMatrix dephase(const DensityMatrix& rho, const Basis& basis);

enum class ReqRule { diagonal_rule, maximally_mixed_rule };

std::string_view to_string(ReqRule rule);

struct ReqResult {
  double value;
  DensityMatrix reference_state;
  ReqRule rule_applied;
};

/// Relative entropy of quantumness with a basis-dependent reference state.
/// A state that is diagonal in `basis` (within diag_tol Frobenius) is
/// its own reference and scores 0; any other state is compared against
/// the maximally mixed state, giving log2 d - S(rho).
ReqResult req(const DensityMatrix& rho, const Basis& basis, double diag_tol = 1e-10);

}  // namespace unital
