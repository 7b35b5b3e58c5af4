#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unital/linalg.hpp"

namespace unital {

/// How a mixed co-subsystem state enters the Kraus operators.
///  - indexed:      one operator sqrt(p_j) <i|U|a_j> per (i, j) with p_j > 1e-12.
///                  Always CPTP.
///  - paper_summed: K_i = sum_j sqrt(p_j) <i|U|a_j>. Matches indexed for pure
///                  co-subsystem states; not CPTP in general.
enum class KrausMode { indexed, paper_summed };

std::string_view to_string(KrausMode mode);
KrausMode parse_kraus_mode(std::string_view text);

/// Which factor of U = (system) x (environment) was contracted away.
enum class TracedFactor { environment, system };

std::string_view to_string(TracedFactor traced);

struct KrausSource {
  TracedFactor traced;
  std::size_t dim_s;
  std::size_t dim_e;
  KrausMode mode;
  /// Co-subsystem eigenvalues p_j (or q_k) as delivered by hermitian_eig.
  std::vector<double> weights;
};

/// Ordered list of equally shaped square operators plus the eigenbasis of
/// the co-subsystem state they were extracted against.
class KrausSet {
 public:
  /// Throws InvalidArgument for an empty list and DimensionMismatch when the
  /// operators differ in shape or the basis dimension is inconsistent.
  KrausSet(std::vector<ComplexMatrix> operators, Basis extraction_basis, KrausSource source);

  /// A set with no extraction provenance (e.g. loaded from a file).
  static KrausSet from_operators(std::vector<ComplexMatrix> operators);

  const std::vector<ComplexMatrix>& operators() const noexcept { return operators_; }
  const Basis& extraction_basis() const noexcept { return basis_; }
  const KrausSource& source() const noexcept { return source_; }
  std::size_t dim() const noexcept { return operators_.front().rows(); }
  std::size_t size() const noexcept { return operators_.size(); }

  /// Copy without operators whose Frobenius norm is <= threshold. Keeps at
  /// least one operator.
  KrausSet pruned(double threshold = 1e-12) const;

 private:
  std::vector<ComplexMatrix> operators_;
  Basis basis_;
  KrausSource source_;
};

inline constexpr double kDefaultTolerance = 1e-10;

struct ChannelReport {
  double completeness_defect;
  double unitality_defect;
  double tolerance;
  bool is_cptp;
  bool is_unital;
};

/// sum_k K_k^dagger K_k
ComplexMatrix completeness_sum(const KrausSet& k);
/// sum_k K_k K_k^dagger
ComplexMatrix unitality_sum(const KrausSet& k);

ChannelReport channel_report(const KrausSet& k, double tolerance = kDefaultTolerance);

/// Kraus operators on the system of U acting on (system) x (environment),
/// with the environment prepared in env_state and then traced out.
///
/// Throws DimensionMismatch when the shapes disagree and NotUnitary when
/// ||U^dagger U - I||_F > 1e-8.
KrausSet extract_system_kraus(const ComplexMatrix& u, std::size_t dim_s, std::size_t dim_e,
                              const DensityMatrix& env_state, KrausMode mode = KrausMode::indexed);

/// Mirror of extract_system_kraus: the system starts in sys_state and is
/// traced out, leaving operators on the environment.
KrausSet extract_env_kraus(const ComplexMatrix& u, std::size_t dim_s, std::size_t dim_e,
                           const DensityMatrix& sys_state, KrausMode mode = KrausMode::indexed);

/// sum_k K rho K^dagger. Throws NotCptp when the completeness defect exceeds
/// 1e-8 and DimensionMismatch on shape mismatch.
DensityMatrix apply_channel(const KrausSet& k, const DensityMatrix& rho);

/// U = sum_j blocks[j] (x) |a_j><a_j| with |a_j> the columns of env_basis.
ComplexMatrix controlled_unitary(std::span<const ComplexMatrix> blocks, const Basis& env_basis);

}  // namespace unital
