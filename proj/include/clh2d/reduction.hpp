#pragma once

#include "clh2d/instance.hpp"

#include <array>
#include <optional>
#include <vector>

namespace clh2d {

struct ClassicalQubit {
  int qubit = -1;
  std::array<Mat2, 2> projectors;  // rank-1, orthogonal, summing to I
};

// First non-trivial qubit whose joint induced algebra is commutative.
std::optional<ClassicalQubit> find_classical_qubit(const CLHInstance& instance, const Tolerances& tol = {});

// The unit vector spanning a rank-1 projector, first nonzero entry real positive.
Eigen::Vector2cd projector_state(const Mat2& projector);

// Restricts every term on `qubit` to the range of `projector`: h becomes
// I (x) <a|h|a>, so the qubit ends up trivial. Throws NotInvariant.
CLHInstance project_out(const CLHInstance& instance, int qubit, const Mat2& projector, const Tolerances& tol = {});

struct WitnessStep {
  int qubit = -1;
  Mat2 projector;
};

struct ReductionWitness {
  std::vector<WitnessStep> steps;
};

struct ReductionOptions {
  Tolerances tol;
  ExactOptions exact;
  // Use these branch choices instead of comparing exact ground energies.
  const ReductionWitness* supplied = nullptr;
};

struct ReductionResult {
  CLHInstance instance;
  ReductionWitness witness;
  std::vector<double> branch_energies;  // chosen branch energy per step (exhaustive mode)
};

ReductionResult remove_all_classical(const CLHInstance& instance, const ReductionOptions& options = {});

// Applies the recorded projectors in order.
CLHInstance replay_witness(const CLHInstance& instance, const ReductionWitness& witness, const Tolerances& tol = {});

// Per-qubit states selected by the witness (empty where no step touched the qubit).
std::vector<std::optional<Eigen::Vector2cd>> witness_states(const ReductionWitness& witness, int qubits);

}  // namespace clh2d
