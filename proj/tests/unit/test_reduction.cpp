#include "clh2d/algebra.hpp"
#include "clh2d/linalg.hpp"
#include "clh2d/reduction.hpp"
#include "clh2d/rng.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace clh2d;

namespace {

CLHInstance diagonal_square() {
  const auto c = planar_grid(1, 1);
  TermMatrices tm;
  for (int v = 0; v < 4; ++v) tm.stars.push_back(identity_on(2));
  tm.plaquettes.push_back(-pauli_string("ZZZZ"));
  return attach_terms(c, tm);
}

// Surface code on planar_grid(2, 2) whose identity stars strand
// `classical` outer edges with a single acting plaquette.
CLHInstance stranded(int classical, std::uint64_t seed) {
  const auto c = planar_grid(2, 2);
  std::vector<std::vector<int>> stars = {{0, 1}, {0, 1, 2}, {0, 1, 2, 3}};
  Rng rng(seed);
  DefectCoefficients d = DefectCoefficients::toric(c);
  for (auto& x : d.u) x = 0.4 * rng.uniform() - 0.2;
  for (auto& x : d.u_prime) x = -(0.5 + 0.3 * rng.uniform());
  for (auto& x : d.v) x = 0.4 * rng.uniform() - 0.2;
  for (auto& x : d.v_prime) x = rng.uniform() < 0.5 ? -0.7 : 0.7;
  // Vertex ids: corner 0, bottom middle 1, corner 2, left middle 3.
  return scramble(surface_code_instance(c, &d, stars.at(classical - 1)), seed);
}

bool every_qubit_quantum(const CLHInstance& inst) {
  const auto actions = qubit_actions(inst);
  for (const auto& act : actions) {
    std::vector<QubitAlgebraClass> lines;
    bool full = false;
    for (const auto* group : {&act.stars, &act.plaquettes})
      for (const auto& [t, cls] : *group) {
        if (cls.tag == QubitClass::Full) full = true;
        if (cls.tag == QubitClass::PauliLine) lines.push_back(cls);
      }
    if (lines.empty() || full) continue;
    bool clash = false;
    for (std::size_t i = 0; i < lines.size(); ++i)
      for (std::size_t j = i + 1; j < lines.size(); ++j)
        clash = clash || commutator_norm(lines[i].generator, lines[j].generator) > 1e-8;
    if (!clash) return false;
  }
  return true;
}

}  // namespace

TEST(Reduction, ToricHasNoClassicalQubit) {
  const auto inst = scramble(toric_instance(torus_grid(3, 3)), 4);
  EXPECT_FALSE(find_classical_qubit(inst).has_value());
  const auto r = remove_all_classical(inst);
  EXPECT_TRUE(r.witness.steps.empty());
  for (int t = 0; t < inst.term_count(); ++t) EXPECT_EQ(r.instance.term(t).matrix, inst.term(t).matrix);
}

TEST(Reduction, DiagonalQubitProjectors) {
  const auto inst = diagonal_square();
  const auto found = find_classical_qubit(inst);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(found->qubit, 0);
  Mat2 p0 = Mat2::Zero(), p1 = Mat2::Zero();
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  EXPECT_LT((found->projectors[0] - p0).norm(), 1e-12);
  EXPECT_LT((found->projectors[1] - p1).norm(), 1e-12);

  const auto s = scramble_with_unitaries(inst, 8);
  const auto moved = find_classical_qubit(s.instance);
  ASSERT_TRUE(moved.has_value());
  const Mat2& u = s.unitaries[moved->qubit];
  const Mat2 a = u * p0 * u.adjoint(), b = u * p1 * u.adjoint();
  const double same = (moved->projectors[0] - a).norm() + (moved->projectors[1] - b).norm();
  const double swapped = (moved->projectors[0] - b).norm() + (moved->projectors[1] - a).norm();
  EXPECT_LT(std::min(same, swapped), 1e-10);
}

TEST(Reduction, ProjectOutMakesQubitTrivial) {
  const auto inst = scramble(diagonal_square(), 2);
  const auto found = find_classical_qubit(inst);
  ASSERT_TRUE(found.has_value());
  const double full = oracle::dense_ground_energy(inst);
  double best = 1e9;
  for (const auto& pi : found->projectors) {
    const auto out = project_out(inst, found->qubit, pi);
    for (int t : out.terms_on_qubit(found->qubit)) EXPECT_TRUE(acts_trivially(out.term(t), found->qubit));
    const double e = oracle::dense_ground_energy(out);
    EXPECT_GE(e, full - 1e-10);
    best = std::min(best, e);
  }
  EXPECT_NEAR(best, full, 1e-10);
}

TEST(Reduction, NotInvariant) {
  const auto inst = toric_instance(torus_grid(2, 2));
  Mat2 p0 = Mat2::Zero();
  p0(0, 0) = 1;
  try {
    project_out(inst, 0, p0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvariant);
  }
}

TEST(Reduction, StrandedEdgesSoundAndComplete) {
  for (int classical = 1; classical <= 3; ++classical)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto inst = stranded(classical, seed * 10 + classical);
      const auto r = remove_all_classical(inst);
      EXPECT_EQ(static_cast<int>(r.witness.steps.size()), classical);
      EXPECT_NEAR(exact_ground_energy(r.instance), exact_ground_energy(inst), 1e-9);
      EXPECT_FALSE(find_classical_qubit(r.instance).has_value());
      EXPECT_TRUE(every_qubit_quantum(r.instance));
      const auto replay = replay_witness(inst, r.witness);
      for (int t = 0; t < inst.term_count(); ++t) EXPECT_TRUE(replay.term(t).matrix == r.instance.term(t).matrix);
      for (const auto& step : r.witness.steps) {
        EXPECT_LT((step.projector * step.projector - step.projector).norm(), 1e-12);
        EXPECT_NEAR(step.projector.trace().real(), 1.0, 1e-12);
      }
    }
}

TEST(Reduction, SoundnessEveryReducedEigenvalueIsOriginal) {
  const auto inst = scramble(surface_code_instance(planar_grid(2, 1), nullptr, {0, 1}), 6);
  const auto r = remove_all_classical(inst);
  ASSERT_FALSE(r.witness.steps.empty());
  Eigen::SelfAdjointEigenSolver<Mat> a(oracle::dense_hamiltonian(inst), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Mat> b(oracle::dense_hamiltonian(r.instance), Eigen::EigenvaluesOnly);
  for (Eigen::Index i = 0; i < b.eigenvalues().size(); ++i) {
    const double x = b.eigenvalues()(i);
    EXPECT_LT((a.eigenvalues().array() - x).abs().minCoeff(), 1e-9);
  }
}

TEST(Reduction, SuppliedWitnessAndProverCap) {
  const auto inst = stranded(2, 5);
  const auto r = remove_all_classical(inst);
  ReductionOptions opt;
  opt.supplied = &r.witness;
  const auto again = remove_all_classical(inst, opt);
  for (int t = 0; t < inst.term_count(); ++t) EXPECT_TRUE(again.instance.term(t).matrix == r.instance.term(t).matrix);

  ReductionOptions tiny;
  tiny.exact.max_qubits = 3;
  try {
    remove_all_classical(inst, tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLargeForProver);
  }
}

TEST(Reduction, TerminatesWithinQubitCount) {
  const auto inst = diagonal_square();
  const auto r = remove_all_classical(inst);
  EXPECT_LE(static_cast<int>(r.witness.steps.size()), inst.qubit_count());
  EXPECT_NEAR(exact_ground_energy(r.instance), -1.0 + 4.0, 1e-12);
}
