#include "clh2d/reduction.hpp"

#include "clh2d/algebra.hpp"
#include "clh2d/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace clh2d {

std::optional<ClassicalQubit> find_classical_qubit(const CLHInstance& instance, const Tolerances& tol) {
  for (int q = 0; q < instance.qubit_count(); ++q) {
    const auto joint = joint_qubit_algebra(instance, q, tol.rank);
    if (joint.dimension() != 2) continue;
    const Mat2 g = classify_qubit_algebra(joint).generator;
    Eigen::SelfAdjointEigenSolver<Mat2> es(g);
    ClassicalQubit out;
    out.qubit = q;
    for (int b = 0; b < 2; ++b) {
      Eigen::Vector2cd v = es.eigenvectors().col(1 - b);
      out.projectors[b] = v * v.adjoint();
    }
    return out;
  }
  return std::nullopt;
}

Eigen::Vector2cd projector_state(const Mat2& projector) {
  const int col = projector.col(0).norm() >= projector.col(1).norm() ? 0 : 1;
  Eigen::Vector2cd v = projector.col(col).normalized();
  for (int i = 0; i < 2; ++i)
    if (std::abs(v(i)) > 1e-9) {
      v *= std::conj(v(i)) / std::abs(v(i));
      break;
    }
  return v;
}

CLHInstance project_out(const CLHInstance& instance, int qubit, const Mat2& projector, const Tolerances& tol) {
  const Eigen::Vector2cd alpha = projector_state(projector);
  std::vector<Mat> mats;
  for (int t = 0; t < instance.term_count(); ++t) {
    const auto& term = instance.term(t);
    const int pos = position_in(term, qubit);
    if (pos < 0) {
      mats.push_back(term.matrix);
      continue;
    }
    const int r = static_cast<int>(term.qubits.size());
    const Mat pi = embed(projector, {pos}, r);
    const double drift = commutator_norm(term.matrix, pi);
    if (drift > tol.invariance)
      throw Error(ErrorCode::NotInvariant, instance.term_label(t) + " does not preserve the projector on qubit " +
                                               instance.complex().edge_id(qubit));
    Mat reduced = partial_element(term.matrix, pos, r, alpha, alpha);
    reduced = 0.5 * (reduced + reduced.adjoint()).eval();
    mats.push_back(insert_identity(reduced, pos, r));
  }
  return instance.with_matrices(mats, tol);
}

ReductionResult remove_all_classical(const CLHInstance& instance, const ReductionOptions& options) {
  if (options.supplied) {
    ReductionResult out{replay_witness(instance, *options.supplied, options.tol), *options.supplied, {}};
    if (auto left = find_classical_qubit(out.instance, options.tol))
      throw Error(ErrorCode::InvalidArgument,
                  "supplied witness leaves classical qubit " + instance.complex().edge_id(left->qubit));
    return out;
  }
  ReductionResult out{instance, {}, {}};
  while (auto found = find_classical_qubit(out.instance, options.tol)) {
    std::array<CLHInstance, 2> branches;
    std::array<double, 2> energies{};
    for (int b = 0; b < 2; ++b) {
      branches[b] = project_out(out.instance, found->qubit, found->projectors[b], options.tol);
      try {
        energies[b] = exact_ground_energy(branches[b], options.exact);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLarge) throw;
        throw Error(ErrorCode::TooLargeForProver, std::string("branch selection needs ") + e.what());
      }
    }
    const int pick = energies[1] < energies[0] - 1e-12 ? 1 : 0;
    out.witness.steps.push_back({found->qubit, found->projectors[pick]});
    out.branch_energies.push_back(energies[pick]);
    out.instance = branches[pick];
  }
  return out;
}

CLHInstance replay_witness(const CLHInstance& instance, const ReductionWitness& witness, const Tolerances& tol) {
  CLHInstance out = instance;
  for (const auto& step : witness.steps) out = project_out(out, step.qubit, step.projector, tol);
  return out;
}

std::vector<std::optional<Eigen::Vector2cd>> witness_states(const ReductionWitness& witness, int qubits) {
  std::vector<std::optional<Eigen::Vector2cd>> out(qubits);
  for (const auto& step : witness.steps) out.at(step.qubit) = projector_state(step.projector);
  return out;
}

}  // namespace clh2d
