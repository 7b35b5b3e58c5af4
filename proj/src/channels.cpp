#include "unital/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "unital/errors.hpp"

namespace unital {

namespace {

constexpr double kWeightCutoff = 1e-12;
constexpr double kUnitaryAdmission = 1e-8;
constexpr double kCptpAdmission = 1e-8;

void require_joint_unitary(const ComplexMatrix& u, std::size_t dim_s, std::size_t dim_e) {
  if (dim_s == 0 || dim_e == 0) throw InvalidArgument("subsystem dimensions must be positive");
  if (!u.is_square() || u.rows() != dim_s * dim_e) {
    throw DimensionMismatch("joint unitary is " + std::to_string(u.rows()) + "x" +
                            std::to_string(u.cols()) + ", expected " + std::to_string(dim_s * dim_e) +
                            " square");
  }
  const double defect = unitarity_defect(u);
  if (!(defect <= kUnitaryAdmission)) {
    throw NotUnitary("joint operator is not unitary (defect " + std::to_string(defect) + ")");
  }
}

// Operator on the kept factor: <out|_traced U (. (x) |v>_traced).
ComplexMatrix contract(const ComplexMatrix& u, std::size_t dim_s, std::size_t dim_e,
                       TracedFactor traced, std::size_t out, const ComplexMatrix& v) {
  if (traced == TracedFactor::environment) {
    ComplexMatrix k(dim_s, dim_s);
    for (std::size_t sp = 0; sp < dim_s; ++sp)
      for (std::size_t s = 0; s < dim_s; ++s) {
        Complex acc = 0.0;
        for (std::size_t e = 0; e < dim_e; ++e) acc += u(sp * dim_e + out, s * dim_e + e) * v(e, 0);
        k(sp, s) = acc;
      }
    return k;
  }
  ComplexMatrix k(dim_e, dim_e);
  for (std::size_t ep = 0; ep < dim_e; ++ep)
    for (std::size_t e = 0; e < dim_e; ++e) {
      Complex acc = 0.0;
      for (std::size_t s = 0; s < dim_s; ++s) acc += u(out * dim_e + ep, s * dim_e + e) * v(s, 0);
      k(ep, e) = acc;
    }
  return k;
}

KrausSet extract(const ComplexMatrix& u, std::size_t dim_s, std::size_t dim_e,
                 const DensityMatrix& co_state, TracedFactor traced, KrausMode mode) {
  require_joint_unitary(u, dim_s, dim_e);
  const std::size_t traced_dim = traced == TracedFactor::environment ? dim_e : dim_s;
  if (co_state.dim() != traced_dim) {
    throw DimensionMismatch("co-subsystem state has dim " + std::to_string(co_state.dim()) +
                            ", expected " + std::to_string(traced_dim));
  }

  auto eig = hermitian_eig(co_state.matrix());
  for (auto& p : eig.values) p = std::max(p, 0.0);

  std::vector<ComplexMatrix> ops;
  if (mode == KrausMode::indexed) {
    for (std::size_t j = 0; j < traced_dim; ++j) {
      const double p = eig.values[j];
      if (!(p > kWeightCutoff)) continue;
      const ComplexMatrix a = eig.vectors.vector(j);
      for (std::size_t i = 0; i < traced_dim; ++i) {
        ops.push_back(std::sqrt(p) * contract(u, dim_s, dim_e, traced, i, a));
      }
    }
  } else {
    ComplexMatrix weighted(traced_dim, 1);
    for (std::size_t j = 0; j < traced_dim; ++j) {
      if (!(eig.values[j] > kWeightCutoff)) continue;
      weighted += std::sqrt(eig.values[j]) * eig.vectors.vector(j);
    }
    for (std::size_t i = 0; i < traced_dim; ++i) {
      ops.push_back(contract(u, dim_s, dim_e, traced, i, weighted));
    }
  }

  KrausSource source{traced, dim_s, dim_e, mode, eig.values};
  return KrausSet(std::move(ops), std::move(eig.vectors), std::move(source));
}

}  // namespace

std::string_view to_string(KrausMode mode) {
  return mode == KrausMode::indexed ? "indexed" : "paper_summed";
}

KrausMode parse_kraus_mode(std::string_view text) {
  if (text == "indexed") return KrausMode::indexed;
  if (text == "paper_summed") return KrausMode::paper_summed;
  throw InvalidArgument("unknown Kraus mode '" + std::string(text) + "'");
}

std::string_view to_string(TracedFactor traced) {
  return traced == TracedFactor::environment ? "environment" : "system";
}

KrausSet::KrausSet(std::vector<ComplexMatrix> operators, Basis extraction_basis, KrausSource source)
    : operators_(std::move(operators)), basis_(std::move(extraction_basis)), source_(std::move(source)) {
  if (operators_.empty()) throw InvalidArgument("Kraus set must contain at least one operator");
  const std::size_t d = operators_.front().rows();
  for (const auto& k : operators_) {
    if (!k.is_square() || k.rows() != d) {
      throw DimensionMismatch("Kraus operators must all be " + std::to_string(d) + "x" +
                              std::to_string(d));
    }
  }
}

KrausSet KrausSet::from_operators(std::vector<ComplexMatrix> operators) {
  if (operators.empty()) throw InvalidArgument("Kraus set must contain at least one operator");
  const std::size_t d = operators.front().rows();
  KrausSource source{TracedFactor::environment, d, 1, KrausMode::indexed, {1.0}};
  return KrausSet(std::move(operators), Basis::computational(1), std::move(source));
}

KrausSet KrausSet::pruned(double threshold) const {
  std::vector<ComplexMatrix> kept;
  for (const auto& k : operators_)
    if (k.frobenius_norm() > threshold) kept.push_back(k);
  if (kept.empty()) kept.push_back(operators_.front());
  return KrausSet(std::move(kept), basis_, source_);
}

ComplexMatrix completeness_sum(const KrausSet& k) {
  ComplexMatrix sum(k.dim(), k.dim());
  for (const auto& op : k.operators()) sum += op.adjoint() * op;
  return sum;
}

ComplexMatrix unitality_sum(const KrausSet& k) {
  ComplexMatrix sum(k.dim(), k.dim());
  for (const auto& op : k.operators()) sum += op * op.adjoint();
  return sum;
}

ChannelReport channel_report(const KrausSet& k, double tolerance) {
  const double completeness = defect_from_identity(completeness_sum(k));
  const double unitality = defect_from_identity(unitality_sum(k));
  return ChannelReport{completeness, unitality, tolerance, completeness <= tolerance,
                       unitality <= tolerance};
}

KrausSet extract_system_kraus(const ComplexMatrix& u, std::size_t dim_s, std::size_t dim_e,
                              const DensityMatrix& env_state, KrausMode mode) {
  return extract(u, dim_s, dim_e, env_state, TracedFactor::environment, mode);
}

KrausSet extract_env_kraus(const ComplexMatrix& u, std::size_t dim_s, std::size_t dim_e,
                           const DensityMatrix& sys_state, KrausMode mode) {
  return extract(u, dim_s, dim_e, sys_state, TracedFactor::system, mode);
}

DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho) {
  if (k.dim() != rho.dim()) {
    throw DimensionMismatch("channel acts on dim " + std::to_string(k.dim()) + ", state has dim " +
                            std::to_string(rho.dim()));
  }
  const double completeness = defect_from_identity(completeness_sum(k));
  if (!(completeness <= kCptpAdmission)) {
    throw NotCptp("Kraus set is not trace preserving (defect " + std::to_string(completeness) + ")");
  }
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto& op : k.operators()) out += op * rho.matrix() * op.adjoint();
  return DensityMatrix(std::move(out));
}

ComplexMatrix controlled_unitary(std::span<const ComplexMatrix> blocks, const Basis& env_basis) {
  const std::size_t dim_e = env_basis.dim();
  if (blocks.size() != dim_e) {
    throw DimensionMismatch("controlled_unitary: " + std::to_string(blocks.size()) +
                            " blocks for an environment of dim " + std::to_string(dim_e));
  }
  const std::size_t dim_s = blocks.front().rows();
  ComplexMatrix u(dim_s * dim_e, dim_s * dim_e);
  for (std::size_t j = 0; j < dim_e; ++j) {
    const auto& block = blocks[j];
    if (!block.is_square() || block.rows() != dim_s) {
      throw DimensionMismatch("controlled_unitary: blocks must share one square shape");
    }
    const double defect = unitarity_defect(block);
    if (!(defect <= 1e-10)) {
      throw NotUnitary("controlled_unitary: block " + std::to_string(j) + " has defect " +
                       std::to_string(defect));
    }
    u += tensor(block, outer(env_basis.vector(j)));
  }
  return u;
}

}  // namespace unital
