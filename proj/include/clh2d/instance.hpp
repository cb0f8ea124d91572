#pragma once

#include "clh2d/complex.hpp"
#include "clh2d/core.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace clh2d {

enum class TermKind { Star, Plaquette };

std::string_view kind_name(TermKind kind);

// A Hermitian term on the qubits of one site. Qubit 0 of `matrix` is qubits[0].
struct LocalTerm {
  TermKind kind = TermKind::Star;
  int site = -1;
  std::vector<int> qubits;
  Mat matrix;
};

// Site matrices indexed by vertex / face index of the complex.
struct TermMatrices {
  std::vector<Mat> stars;
  std::vector<Mat> plaquettes;
};

// Terms are indexed stars first (term v for vertex v), then plaquettes
// (term V + f for face f). Star qubits are the vertex edges in increasing
// edge order; plaquette qubits follow the face boundary walk.
class CLHInstance {
 public:
  CLHInstance() = default;

  const SurfaceComplex& complex() const { return *complex_; }
  std::shared_ptr<const SurfaceComplex> complex_ptr() const { return complex_; }
  int qubit_count() const { return complex_->edge_count(); }
  int term_count() const { return static_cast<int>(terms_.size()); }
  const LocalTerm& term(int t) const { return terms_.at(t); }
  const std::vector<LocalTerm>& terms() const { return terms_; }
  int star_term(int v) const { return v; }
  int plaquette_term(int f) const { return complex_->vertex_count() + f; }
  const std::vector<int>& terms_on_qubit(int q) const { return on_qubit_.at(q); }
  int locality() const { return complex_->locality(); }
  std::string term_label(int t) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

  // Same complex, new matrices; re-validates.
  CLHInstance with_matrices(const std::vector<Mat>& matrices, const Tolerances& tol = {}) const;

 private:
  friend CLHInstance attach_terms(std::shared_ptr<const SurfaceComplex>, const TermMatrices&, const Tolerances&);

  std::shared_ptr<const SurfaceComplex> complex_;
  std::vector<LocalTerm> terms_;
  std::vector<std::vector<int>> on_qubit_;
  std::vector<std::string> warnings_;
};

std::vector<int> site_qubits(const SurfaceComplex& complex, TermKind kind, int site);

// Validates dimensions, hermiticity, norms and pairwise commutation.
CLHInstance attach_terms(std::shared_ptr<const SurfaceComplex> complex, const TermMatrices& matrices,
                         const Tolerances& tol = {});
CLHInstance attach_terms(const SurfaceComplex& complex, const TermMatrices& matrices, const Tolerances& tol = {});

// Frobenius norm of [l, r] on the joint support, from operator-Schmidt
// decompositions across the shared qubits.
double commutator_residual(const LocalTerm& l, const LocalTerm& r);

struct CommutationReport {
  double max_residual = 0.0;
  int pairs_checked = 0;
  std::vector<std::pair<std::pair<int, int>, double>> failures;
};
CommutationReport check_commutation(const CLHInstance& instance, double tol);

// u I + u' Z^{(x)|s|} on stars and v I + v' X^{(x)|p|} on plaquettes.
struct DefectCoefficients {
  std::vector<double> u, u_prime;
  std::vector<double> v, v_prime;

  static DefectCoefficients toric(const SurfaceComplex& complex);
};

CLHInstance toric_instance(const SurfaceComplex& complex);
CLHInstance defected_toric_instance(const SurfaceComplex& complex, const DefectCoefficients& coefficients);
// Toric-type terms on any complex (boundaries allowed); stars listed in
// `identity_stars` carry the identity instead.
CLHInstance surface_code_instance(const SurfaceComplex& complex, const DefectCoefficients* coefficients = nullptr,
                                  const std::vector<int>& identity_stars = {});

// Conjugates every term by the tensor product of per-qubit unitaries: h -> U h U^dagger.
CLHInstance conjugate(const CLHInstance& instance, const std::vector<Mat2>& unitaries);

struct Scrambled {
  CLHInstance instance;
  std::vector<Mat2> unitaries;
};
Scrambled scramble_with_unitaries(const CLHInstance& instance, std::uint64_t seed);
CLHInstance scramble(const CLHInstance& instance, std::uint64_t seed);

// Sum of <psi|h|psi> over all terms; psi lives on all n qubits.
double energy(const CLHInstance& instance, const Vec& state);

struct ExactOptions {
  int max_qubits = 24;    // per connected block after removing idle qubits
  int dense_below = 8;    // full diagonalization up to this many qubits
  double tol = 1e-11;     // Lanczos residual target
  std::string cache_dir;  // memoizes exact_ground_energy by instance content when set
};

// Minimal eigenvalue of the sum of all terms. Qubits no term acts on are
// traced out and disconnected blocks are solved separately.
double exact_ground_energy(const CLHInstance& instance, const ExactOptions& options = {});

// A ground state on all n qubits; idle qubits are put in `idle_states[q]`
// (|0> when empty). The Lanczos start vector comes from `seed`.
Vec exact_ground_state(const CLHInstance& instance, std::uint64_t seed, const ExactOptions& options = {},
                       const std::vector<Eigen::Vector2cd>& idle_states = {});

// True when h equals I_q (x) (something) within tol.
bool acts_trivially(const LocalTerm& term, int qubit, double tol = 1e-9);

// Position of `qubit` inside term.qubits, or -1.
int position_in(const LocalTerm& term, int qubit);

}  // namespace clh2d
