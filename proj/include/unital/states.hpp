#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unital/linalg.hpp"

namespace unital {

/// Computational-basis column vector for a digit label such as "100".
/// Digit k indexes subsystem k (leftmost factor first).
ComplexMatrix ket(std::string_view label, std::span<const std::size_t> local_dims);
/// Qubit shorthand: every subsystem has dimension 2.
ComplexMatrix ket(std::string_view label);

/// H, X, I (2x2) or CNOT (4x4, control = left factor).
ComplexMatrix standard_gate(std::string_view name);

/// How a fixture splits its tensor factors into system and environment.
struct Partition {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> system;
  std::vector<std::size_t> environment;

  std::size_t system_dim() const;
  std::size_t environment_dim() const;
};

/// A prepared pure state together with the unitary that produced it.
struct LabeledState {
  std::string name;
  DensityMatrix state;
  ComplexMatrix preparation_unitary;
  std::string initial_ket_label;
  Partition partition;
};

/// CNOT (H x I) acting on |00>. System = qubit 2, environment = qubit 1.
LabeledState bell_unitary();
/// (I x CNOT)(CNOT x I)(H x I x I) acting on |000>. System = qubits 1-2.
LabeledState ghz_unitary();
/// Literal 8x8 W-preparation unitary acting on |100>. System = qubits 1-2.
LabeledState w_unitary();

/// Looks up "bell", "ghz" or "w". Throws InvalidArgument otherwise.
LabeledState fixture(std::string_view name);

/// A fixture rearranged to system (x) environment order, with the initial
/// product state split into its two factors.
struct SystemEnvironmentView {
  ComplexMatrix unitary;
  std::size_t dim_s;
  std::size_t dim_e;
  DensityMatrix system_initial;
  DensityMatrix environment_initial;
  std::string system_label;
  std::string environment_label;
};

SystemEnvironmentView system_environment_view(const LabeledState& fixture);

}  // namespace unital
