#include "clh2d/algebra.hpp"
#include "clh2d/linalg.hpp"
#include "clh2d/rng.hpp"
#include "clh2d/structure.hpp"

#include <gtest/gtest.h>

using namespace clh2d;

namespace {

DefectCoefficients random_coefficients(const SurfaceComplex& c, std::uint64_t seed) {
  Rng rng(seed);
  DefectCoefficients d = DefectCoefficients::toric(c);
  for (auto* v : {&d.u, &d.v})
    for (auto& x : *v) x = 0.4 * rng.uniform() - 0.2;
  for (auto* v : {&d.u_prime, &d.v_prime})
    for (auto& x : *v) x = (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.3 + 0.5 * rng.uniform());
  return d;
}

CLHInstance calibrated(const CLHInstance& inst) { return apply_calibration(inst, calibrate(inst)); }

// Every adjacent interior star / plaquette pair has a member in W.
bool adjacent_pairs_covered(const CLHInstance& inst, const RoleMap& roles, const std::map<int, StringOperator>& w) {
  const auto& c = inst.complex();
  for (int e = 0; e < c.edge_count(); ++e)
    for (int v : c.edge_vertices(e))
      for (int f : c.edge_faces(e)) {
        const int s = inst.star_term(v), p = inst.plaquette_term(f);
        if (roles.interior_terms[s] && roles.interior_terms[p] && !w.count(s) && !w.count(p)) return false;
      }
  return true;
}

void expect_certified(const CLHInstance& inst, const RoleMap& roles, const std::map<int, StringOperator>& w) {
  for (const auto& [t, op] : w) {
    EXPECT_EQ(op.target, t);
    const auto cert = certify_string(inst, op);
    EXPECT_TRUE(cert.target_nontrivial);
    EXPECT_LT(cert.target_anticommutator, 1e-10);
    EXPECT_LT(cert.max_commutator, 1e-10);
    EXPECT_EQ(op.kind, inst.term(t).kind == TermKind::Star ? StringKind::PathX : StringKind::CopathZ);
    // The terminal ribbon edge is special and both terminal terms act on it.
    const int qm = op.ribbon.back();
    EXPECT_TRUE(roles.qubits[qm].special());
    EXPECT_FALSE(acts_trivially(inst.term(inst.star_term(op.terminal_star)), qm));
    EXPECT_FALSE(acts_trivially(inst.term(inst.plaquette_term(op.terminal_plaquette)), qm));
  }
}

}  // namespace

TEST(Structure, ToricHasNoSpecialEdge) {
  const auto c = torus_grid(3, 3);
  const auto inst = calibrated(scramble(defected_toric_instance(c, random_coefficients(c, 3)), 3));
  const auto roles = classify_roles(inst);
  EXPECT_FALSE(roles.any_special());
  for (bool b : roles.interior_terms) EXPECT_TRUE(b);
  try {
    access_check(inst, roles, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoSpecialEdge);
  }
  EXPECT_TRUE(fixable_set(inst, roles).empty());
}

TEST(Structure, EquivalenceRecoversCoefficients) {
  const auto c = torus_grid(3, 3);
  const auto d = random_coefficients(c, 11);
  const auto inst = calibrated(scramble(defected_toric_instance(c, d), 11));
  const auto report = verify_equivalence(inst, classify_roles(inst));
  EXPECT_TRUE(report.ok());
  EXPECT_GT(report.windows_checked, 0);
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto& k = report.coefficients[inst.star_term(v)];
    ASSERT_TRUE(k.has_value());
    EXPECT_NEAR(k->identity, d.u[v], 1e-9);
    EXPECT_NEAR(std::abs(k->pauli), std::abs(d.u_prime[v]), 1e-9);
  }
  for (int f = 0; f < c.face_count(); ++f) {
    const auto& k = report.coefficients[inst.plaquette_term(f)];
    ASSERT_TRUE(k.has_value());
    EXPECT_NEAR(k->identity, d.v[f], 1e-9);
    EXPECT_NEAR(std::abs(k->pauli), std::abs(d.v_prime[f]), 1e-9);
  }
}

TEST(Structure, EquivalenceRejectsUncalibratedFrames) {
  const auto inst = scramble(toric_instance(torus_grid(3, 3)), 5);
  const auto roles = classify_roles(inst);
  const auto report = verify_equivalence(inst, roles, 1e-8, false);
  EXPECT_FALSE(report.ok());
  try {
    verify_equivalence(inst, roles);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EquivalenceViolation);
  }
}

TEST(Structure, VertexRotation) {
  const auto c = planar_grid(2, 2);
  const auto centre = vertex_rotation(c, 4);
  EXPECT_TRUE(centre.cyclic);
  EXPECT_EQ(centre.edges.size(), 4u);
  const auto corner = vertex_rotation(c, 0);
  EXPECT_FALSE(corner.cyclic);
  EXPECT_EQ(corner.edges.size(), 2u);
  const auto side = vertex_rotation(c, 1);
  EXPECT_FALSE(side.cyclic);
  ASSERT_EQ(side.edges.size(), 3u);
  // The middle entry is the inner edge shared by both faces.
  EXPECT_EQ(c.edge_faces(side.edges[1]).size(), 2u);
}

TEST(Structure, PlanarRoles) {
  const auto c = planar_grid(3, 3);
  const auto inst = calibrated(scramble(surface_code_instance(c), 2));
  const auto roles = classify_roles(inst);
  for (int e = 0; e < c.edge_count(); ++e) {
    EXPECT_EQ(roles.qubits[e].boundary, c.edge_faces(e).size() == 1);
    EXPECT_FALSE(roles.qubits[e].coboundary);
  }
  int interior_stars = 0, interior_plaquettes = 0;
  for (int t = 0; t < inst.term_count(); ++t)
    if (roles.interior_terms[t]) (inst.term(t).kind == TermKind::Star ? interior_stars : interior_plaquettes)++;
  EXPECT_EQ(interior_stars, 4);
  EXPECT_EQ(interior_plaquettes, 1);
  EXPECT_TRUE(verify_equivalence(inst, roles).ok());
}

TEST(Structure, PlanarCentrePlaquetteGetsCopath) {
  const auto c = planar_grid(3, 3);
  const auto inst = calibrated(scramble(surface_code_instance(c, nullptr), 9));
  const auto roles = classify_roles(inst);
  const auto w = fixable_set(inst, roles);
  // Without coboundary qubits no star string can end cleanly.
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w.begin()->first, inst.plaquette_term(4));
  EXPECT_GE(w.begin()->second.support.size(), 2u);
  EXPECT_LE(w.begin()->second.support.size(), 3u);
  expect_certified(inst, roles, w);
  EXPECT_TRUE(adjacent_pairs_covered(inst, roles, w));
}

TEST(Structure, AdjacentPairsCoveredOnScrambledFamilies) {
  struct Case {
    SurfaceComplex complex;
    std::vector<int> identity_stars;
  };
  std::vector<Case> cases = {
      {planar_grid(3, 3), {}},
      {planar_grid(4, 3), {1, 3}},
      {planar_grid(3, 3), {4}},
      {ring_complex(4), {}},
      {ring_complex(5), {}},
      {torus_grid(4, 4), {0}},
  };
  for (std::size_t i = 0; i < cases.size(); ++i)
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto& cc = cases[i].complex;
      const auto d = random_coefficients(cc, 100 * i + seed);
      const auto inst = calibrated(scramble(surface_code_instance(cc, &d, cases[i].identity_stars), seed));
      const auto roles = classify_roles(inst);
      ASSERT_TRUE(roles.any_special());
      EXPECT_TRUE(verify_equivalence(inst, roles).ok());
      const auto w = fixable_set(inst, roles);
      expect_certified(inst, roles, w);
      EXPECT_TRUE(adjacent_pairs_covered(inst, roles, w)) << "case " << i << " seed " << seed;
    }
}

TEST(Structure, CoboundaryGivesPathX) {
  const auto c = torus_grid(4, 4);
  const auto inst = calibrated(surface_code_instance(c, nullptr, {0}));
  const auto roles = classify_roles(inst);
  for (int e : c.vertex_edges(0)) {
    EXPECT_TRUE(roles.qubits[e].coboundary);
    EXPECT_FALSE(roles.qubits[e].boundary);
  }
  const auto w = fixable_set(inst, roles);
  int stars = 0;
  for (const auto& [t, op] : w)
    if (op.kind == StringKind::PathX) ++stars;
  EXPECT_GT(stars, 0);
  expect_certified(inst, roles, w);
  EXPECT_TRUE(adjacent_pairs_covered(inst, roles, w));
}

TEST(Structure, TamperedStringFailsCertification) {
  const auto c = planar_grid(3, 3);
  const auto inst = calibrated(scramble(surface_code_instance(c), 4));
  const auto roles = classify_roles(inst);
  const auto op = access_check(inst, roles, inst.plaquette_term(4));
  ASSERT_TRUE(op.has_value());
  EXPECT_TRUE(certify_string(inst, *op).passed(1e-9));
  auto flipped = *op;
  flipped.letters.back() = 'X';
  EXPECT_FALSE(certify_string(inst, flipped).passed(1e-9));
  auto cut = *op;
  cut.support.pop_back();
  cut.letters.pop_back();
  EXPECT_FALSE(certify_string(inst, cut).passed(1e-9));
  auto retarget = *op;
  retarget.target = inst.star_term(5);
  EXPECT_FALSE(certify_string(inst, retarget).passed(1e-9));
}

TEST(Structure, ZeroBudgetFindsNothing) {
  const auto c = planar_grid(3, 3);
  const auto inst = calibrated(surface_code_instance(c));
  AccessOptions opt;
  opt.ribbon_budget = 0;
  EXPECT_TRUE(fixable_set(inst, classify_roles(inst), opt).empty());
}

TEST(Structure, PunctureReplacesWitnessedTerms) {
  const auto c = planar_grid(3, 3);
  const auto inst = calibrated(scramble(surface_code_instance(c), 6));
  const auto roles = classify_roles(inst);
  const auto w = fixable_set(inst, roles);
  const auto p = puncture(inst, w);
  ASSERT_EQ(p.removed.size(), w.size());
  for (int t = 0; t < inst.term_count(); ++t) {
    if (w.count(t))
      EXPECT_LT((p.punctured.term(t).matrix - Mat::Identity(16, 16)).norm(), 1e-14);
    else
      EXPECT_TRUE(p.punctured.term(t).matrix == inst.term(t).matrix);
  }
}
