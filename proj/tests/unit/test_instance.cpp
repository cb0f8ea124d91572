#include "clh2d/instance.hpp"
#include "clh2d/linalg.hpp"
#include "clh2d/rng.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace clh2d;

namespace {

TermMatrices matrices_of(const CLHInstance& inst) {
  TermMatrices tm;
  for (const auto& t : inst.terms()) (t.kind == TermKind::Star ? tm.stars : tm.plaquettes).push_back(t.matrix);
  return tm;
}

ErrorCode attach_error(const SurfaceComplex& c, const TermMatrices& tm) {
  try {
    attach_terms(c, tm);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

// Dense commutator of two terms embedded on the whole register, rescaled to
// the Frobenius norm on their joint support.
double dense_residual(const CLHInstance& inst, int a, int b) {
  const int n = inst.qubit_count();
  const Mat x = embed(inst.term(a).matrix, inst.term(a).qubits, n);
  const Mat y = embed(inst.term(b).matrix, inst.term(b).qubits, n);
  std::set<int> joint(inst.term(a).qubits.begin(), inst.term(a).qubits.end());
  joint.insert(inst.term(b).qubits.begin(), inst.term(b).qubits.end());
  return (x * y - y * x).norm() / std::sqrt(std::pow(2.0, n - static_cast<int>(joint.size())));
}

DefectCoefficients random_defects(const SurfaceComplex& c, std::uint64_t seed) {
  Rng rng(seed);
  auto draw = [&] {
    double x = 0.0;
    while (std::abs(x) < 0.05) x = 0.8 * rng.uniform() - 0.4;
    return x;
  };
  DefectCoefficients d;
  for (int v = 0; v < c.vertex_count(); ++v) {
    d.u.push_back(draw());
    d.u_prime.push_back(draw());
  }
  for (int f = 0; f < c.face_count(); ++f) {
    d.v.push_back(draw());
    d.v_prime.push_back(draw());
  }
  return d;
}

}  // namespace

TEST(Instance, ToricIsValid) {
  const auto c = torus_grid(2, 2);
  const auto inst = toric_instance(c);
  EXPECT_EQ(inst.term_count(), 8);
  EXPECT_LT(check_commutation(inst, 1e-9).max_residual, 1e-12);
  EXPECT_EQ(inst.term(inst.plaquette_term(0)).qubits, c.face_edges(0));
  EXPECT_EQ(inst.term_label(inst.plaquette_term(1)), "plaquette:1");
}

TEST(Instance, ToricRejectsOpenComplex) {
  try {
    toric_instance(planar_grid(2, 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotClosed);
  }
}

TEST(Instance, NonCommutingReplacementNamesPairs) {
  const auto c = torus_grid(3, 3);
  auto tm = matrices_of(toric_instance(c));
  tm.plaquettes[4] = -pauli_string("XXXY");
  try {
    attach_terms(c, tm);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonCommuting);
    EXPECT_FALSE(e.details().empty());
  }
  // Each star meets the plaquette on two edges, so Z against {X, Y} still
  // commutes; only the plaquette across the Y edge fails.
  const auto tor = toric_instance(c);
  std::vector<Mat> mats;
  for (const auto& t : tor.terms()) mats.push_back(t.matrix);
  mats[tor.plaquette_term(4)] = -pauli_string("XXXY");
  const int y_edge = c.face_edges(4)[3];
  int failing_plaquettes = 0, failing_stars = 0;
  for (int t = 0; t < tor.term_count(); ++t) {
    if (t == tor.plaquette_term(4)) continue;
    const auto& other = tor.term(t);
    bool overlaps = false;
    for (int q : other.qubits) overlaps = overlaps || (position_in(tor.term(tor.plaquette_term(4)), q) >= 0);
    if (!overlaps) continue;
    LocalTerm bad = tor.term(tor.plaquette_term(4));
    bad.matrix = mats[tor.plaquette_term(4)];
    const double res = commutator_residual(bad, other);
    if (res > 1e-9) (other.kind == TermKind::Star ? failing_stars : failing_plaquettes)++;
  }
  EXPECT_EQ(failing_stars, 0);
  EXPECT_EQ(failing_plaquettes, 1);
  (void)y_edge;
}

TEST(Instance, ValidationErrors) {
  const auto c = torus_grid(2, 2);
  auto base = matrices_of(toric_instance(c));

  auto tm = base;
  tm.stars[0] = identity_on(3);
  EXPECT_EQ(attach_error(c, tm), ErrorCode::WrongDimension);

  tm = base;
  tm.stars[0](0, 1) = cplx(0.3, 0);
  EXPECT_EQ(attach_error(c, tm), ErrorCode::NotHermitian);

  tm = base;
  tm.stars[0] *= 1.5;
  EXPECT_EQ(attach_error(c, tm), ErrorCode::NormExceeded);

  tm = base;
  tm.stars[0] *= 1.0 + 5e-7;
  const auto warned = attach_terms(c, tm);
  EXPECT_EQ(warned.warnings().size(), 1u);
}

TEST(Instance, IdentityTermsContributeOneEach) {
  const auto c = torus_grid(2, 2);
  TermMatrices tm;
  for (int v = 0; v < 4; ++v) tm.stars.push_back(identity_on(4));
  for (int f = 0; f < 4; ++f) tm.plaquettes.push_back(identity_on(4));
  const auto inst = attach_terms(c, tm);
  EXPECT_NEAR(exact_ground_energy(inst), 8.0, 1e-12);
}

TEST(Instance, ToricGroundEnergies) {
  const auto t2 = toric_instance(torus_grid(2, 2));
  EXPECT_NEAR(oracle::dense_ground_energy(t2), -8.0, 1e-10);
  EXPECT_NEAR(exact_ground_energy(t2), -8.0, 1e-10);
  const Vec gs = exact_ground_state(t2, 1);
  EXPECT_NEAR(energy(t2, gs), -8.0, 1e-10);

  const auto t3 = toric_instance(torus_grid(3, 3));
  EXPECT_NEAR(exact_ground_energy(t3), -18.0, 1e-9);
}

TEST(Instance, DefectedReducesToToric) {
  const auto c = torus_grid(2, 3);
  const auto a = toric_instance(c);
  const auto b = defected_toric_instance(c, DefectCoefficients::toric(c));
  for (int t = 0; t < a.term_count(); ++t) EXPECT_EQ((a.term(t).matrix - b.term(t).matrix).norm(), 0.0);

  auto d = DefectCoefficients::toric(c);
  d.u_prime[0] = d.u_prime[3] = 1.0;
  EXPECT_NO_THROW(defected_toric_instance(c, d));
  d.u_prime[0] = 0.0;
  EXPECT_THROW(defected_toric_instance(c, d), Error);
}

TEST(Instance, ScramblePreservesStructure) {
  const auto c = torus_grid(2, 2);
  const auto base = defected_toric_instance(c, random_defects(c, 5));
  const auto s = scramble_with_unitaries(base, 17);
  EXPECT_LT(check_commutation(s.instance, 1e-9).max_residual, 1e-12);
  for (int t = 0; t < base.term_count(); ++t) {
    Eigen::SelfAdjointEigenSolver<Mat> x(base.term(t).matrix), y(s.instance.term(t).matrix);
    EXPECT_LT((x.eigenvalues() - y.eigenvalues()).norm(), 1e-12);
  }
  EXPECT_NEAR(exact_ground_energy(s.instance), oracle::dense_ground_energy(base), 1e-9);

  std::vector<Mat2> inverse;
  for (const auto& u : s.unitaries) inverse.push_back(u.adjoint());
  const auto back = conjugate(s.instance, inverse);
  for (int t = 0; t < base.term_count(); ++t) EXPECT_LT((back.term(t).matrix - base.term(t).matrix).norm(), 1e-12);

  const auto again = scramble(base, 17);
  for (int t = 0; t < base.term_count(); ++t) EXPECT_EQ(again.term(t).matrix, s.instance.term(t).matrix);
}

TEST(Instance, SchmidtResidualMatchesDenseCommutator) {
  const auto c = torus_grid(2, 2);
  auto tm = matrices_of(scramble(toric_instance(c), 3));
  // Perturb one plaquette with a non-commuting component.
  tm.plaquettes[1] = 0.7 * tm.plaquettes[1] + 0.2 * pauli_string("ZXYI");
  const auto inst = [&] {
    CLHInstance out = toric_instance(c);
    std::vector<Mat> mats;
    for (int v = 0; v < 4; ++v) mats.push_back(tm.stars[v]);
    for (int f = 0; f < 4; ++f) mats.push_back(tm.plaquettes[f]);
    Tolerances loose;
    loose.commute = 1e9;
    return out.with_matrices(mats, loose);
  }();
  for (int a = 0; a < inst.term_count(); ++a)
    for (int b = a + 1; b < inst.term_count(); ++b)
      EXPECT_NEAR(commutator_residual(inst.term(a), inst.term(b)), dense_residual(inst, a, b), 1e-10);
}

TEST(Instance, LanczosAgreesWithDense) {
  ExactOptions lanczos;
  lanczos.dense_below = 2;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto c = ring_complex(3);
    const auto inst = scramble(surface_code_instance(c, nullptr, {}), seed);
    const double dense = oracle::dense_ground_energy(inst);
    EXPECT_NEAR(exact_ground_energy(inst, lanczos), dense, 1e-9);
    const Vec gs = exact_ground_state(inst, seed, lanczos);
    EXPECT_NEAR(energy(inst, gs), dense, 1e-9);
  }
  const auto p = planar_grid(2, 1);
  auto d = random_defects(p, 9);
  const auto inst = scramble(surface_code_instance(p, &d), 4);
  EXPECT_NEAR(exact_ground_energy(inst, lanczos), oracle::dense_ground_energy(inst), 1e-9);
}

TEST(Instance, TooLarge) {
  ExactOptions tiny;
  tiny.max_qubits = 4;
  try {
    exact_ground_energy(toric_instance(torus_grid(2, 2)), tiny);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(Instance, IdleQubitsAreTracedOut) {
  // Identity stars on a planar grid leave boundary edges to a single plaquette.
  const auto c = planar_grid(1, 1);
  const auto inst = surface_code_instance(c, nullptr, {0, 1, 2, 3});
  EXPECT_NEAR(exact_ground_energy(inst), oracle::dense_ground_energy(inst), 1e-12);
  EXPECT_NEAR(exact_ground_energy(inst), 4.0 - 1.0, 1e-12);
}
