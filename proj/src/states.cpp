#include "unital/states.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "unital/errors.hpp"

namespace unital {

namespace {

constexpr double kFixtureTol = 1e-10;

ComplexMatrix column_of_digits(std::string_view label, std::span<const std::size_t> dims) {
  std::size_t total = 1;
  for (auto d : dims) total *= d;
  std::size_t index = 0;
  for (std::size_t k = 0; k < label.size(); ++k) {
    const char ch = label[k];
    if (ch < '0' || ch > '9') {
      throw InvalidArgument("ket label '" + std::string(label) + "' contains a non-digit");
    }
    const auto digit = static_cast<std::size_t>(ch - '0');
    if (digit >= dims[k]) {
      throw InvalidArgument("ket label '" + std::string(label) + "': digit " + std::to_string(digit) +
                            " exceeds local dimension " + std::to_string(dims[k]));
    }
    index = index * dims[k] + digit;
  }
  ComplexMatrix v(total, 1);
  v(index, 0) = 1.0;
  return v;
}

std::size_t dims_product(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& which) {
  std::size_t d = 1;
  for (auto k : which) d *= dims.at(k);
  return d;
}

// Checks the LabeledState invariants; a failure here is a bug in the
// transcribed data, not a runtime condition.
LabeledState self_checked(LabeledState s) {
  const double u_defect = unitarity_defect(s.preparation_unitary);
  if (!(u_defect <= kFixtureTol)) {
    throw std::logic_error("fixture '" + s.name + "': preparation unitary defect " +
                           std::to_string(u_defect));
  }
  const ComplexMatrix prepared = s.preparation_unitary * ket(s.initial_ket_label, s.partition.dims);
  const double state_defect = frobenius_distance(outer(prepared), s.state.matrix());
  if (!(state_defect <= kFixtureTol)) {
    throw std::logic_error("fixture '" + s.name + "': prepared state mismatch " +
                           std::to_string(state_defect));
  }
  return s;
}

ComplexMatrix uniform_superposition(std::initializer_list<std::string_view> labels,
                                    std::span<const std::size_t> dims) {
  ComplexMatrix v(column_of_digits(*labels.begin(), dims).rows(), 1);
  for (auto label : labels) v += column_of_digits(label, dims);
  v *= 1.0 / std::sqrt(static_cast<double>(labels.size()));
  return v;
}

}  // namespace

ComplexMatrix ket(std::string_view label, std::span<const std::size_t> local_dims) {
  if (label.size() != local_dims.size()) {
    throw InvalidArgument("ket label '" + std::string(label) + "' has " + std::to_string(label.size()) +
                          " digits for " + std::to_string(local_dims.size()) + " subsystems");
  }
  if (label.empty()) throw InvalidArgument("empty ket label");
  for (auto d : local_dims) {
    if (d == 0 || d > 10) throw InvalidArgument("local dimensions must lie in [1, 10] for digit labels");
  }
  return column_of_digits(label, local_dims);
}

ComplexMatrix ket(std::string_view label) {
  const std::vector<std::size_t> dims(label.size(), 2);
  return ket(label, dims);
}

ComplexMatrix standard_gate(std::string_view name) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "H") return ComplexMatrix::from_rows({{r, r}, {r, -r}});
  if (name == "X") return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  if (name == "I") return ComplexMatrix::identity(2);
  if (name == "CNOT") {
    return ComplexMatrix::from_rows({{1.0, 0.0, 0.0, 0.0},
                                     {0.0, 1.0, 0.0, 0.0},
                                     {0.0, 0.0, 0.0, 1.0},
                                     {0.0, 0.0, 1.0, 0.0}});
  }
  throw InvalidArgument("unknown gate '" + std::string(name) + "'");
}

std::size_t Partition::system_dim() const { return dims_product(dims, system); }
std::size_t Partition::environment_dim() const { return dims_product(dims, environment); }

LabeledState bell_unitary() {
  const ComplexMatrix h = standard_gate("H");
  const ComplexMatrix i = standard_gate("I");
  ComplexMatrix u = standard_gate("CNOT") * tensor(h, i);
  std::vector<std::size_t> dims{2, 2};
  auto phi = uniform_superposition({"00", "11"}, dims);
  return self_checked(LabeledState{
      "bell", DensityMatrix::from_ket(phi), std::move(u), "00", Partition{dims, {1}, {0}}});
}

LabeledState ghz_unitary() {
  const ComplexMatrix h = standard_gate("H");
  const ComplexMatrix i = standard_gate("I");
  const ComplexMatrix cnot = standard_gate("CNOT");
  const std::array hii{h, i, i};
  ComplexMatrix u = tensor(i, cnot) * tensor(cnot, i) * tensor(hii);
  std::vector<std::size_t> dims{2, 2, 2};
  auto ghz = uniform_superposition({"000", "111"}, dims);
  return self_checked(LabeledState{
      "ghz", DensityMatrix::from_ket(ghz), std::move(u), "000", Partition{dims, {0, 1}, {2}}});
}

LabeledState w_unitary() {
  const double s2 = 1.0 / std::sqrt(2.0);
  const double s3 = 1.0 / std::sqrt(3.0);
  const double s6 = 1.0 / std::sqrt(6.0);
  struct Term {
    double coefficient;
    const char* row;
    const char* col;
  };
  // |row><col| terms of the W-preparation operator, in source order.
  const std::array<Term, 20> terms{{
      {1.0, "000", "000"}, {s3, "001", "001"},  {-s3, "001", "010"}, {s3, "001", "100"},
      {-s3, "010", "001"}, {s3, "010", "011"},  {s3, "010", "100"},  {1.0, "011", "101"},
      {s3, "100", "010"},  {-s3, "100", "011"}, {s3, "100", "100"},  {1.0, "101", "110"},
      {s6, "110", "001"},  {s6, "110", "010"},  {s6, "110", "011"},  {s2, "110", "111"},
      {s6, "111", "001"},  {s6, "111", "010"},  {s6, "111", "011"},  {-s2, "111", "111"},
  }};
  ComplexMatrix u(8, 8);
  for (const auto& t : terms) u += t.coefficient * (ket(t.row) * ket(t.col).adjoint());
  std::vector<std::size_t> dims{2, 2, 2};
  auto w = uniform_superposition({"001", "010", "100"}, dims);
  return self_checked(LabeledState{
      "w", DensityMatrix::from_ket(w), std::move(u), "100", Partition{dims, {0, 1}, {2}}});
}

LabeledState fixture(std::string_view name) {
  if (name == "bell") return bell_unitary();
  if (name == "ghz") return ghz_unitary();
  if (name == "w") return w_unitary();
  throw InvalidArgument("unknown fixture '" + std::string(name) + "' (expected bell, ghz or w)");
}

SystemEnvironmentView system_environment_view(const LabeledState& fixture) {
  const Partition& p = fixture.partition;
  std::vector<std::size_t> order = p.system;
  order.insert(order.end(), p.environment.begin(), p.environment.end());

  std::string sys_label, env_label;
  std::vector<std::size_t> sys_dims, env_dims;
  for (auto k : p.system) {
    sys_label += fixture.initial_ket_label.at(k);
    sys_dims.push_back(p.dims.at(k));
  }
  for (auto k : p.environment) {
    env_label += fixture.initial_ket_label.at(k);
    env_dims.push_back(p.dims.at(k));
  }

  return SystemEnvironmentView{
      permute_subsystems(fixture.preparation_unitary, p.dims, order),
      p.system_dim(),
      p.environment_dim(),
      DensityMatrix::from_ket(ket(sys_label, sys_dims)),
      DensityMatrix::from_ket(ket(env_label, env_dims)),
      sys_label,
      env_label,
  };
}

}  // namespace unital
