#pragma once

#include "clh2d/instance.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clh2d {

// Boundary: at most one plaquette acts non-trivially; coboundary: at most one star.
struct QubitRole {
  bool boundary = false;
  bool coboundary = false;
  bool interior() const { return !boundary && !coboundary; }
  bool special() const { return boundary || coboundary; }
};

struct RoleMap {
  std::vector<QubitRole> qubits;
  std::vector<bool> interior_terms;
  std::vector<int> nontrivial_stars, nontrivial_plaquettes;  // per qubit

  std::vector<bool> special_edges() const;
  bool any_special() const;
};

RoleMap classify_roles(const CLHInstance& instance, double tol = 1e-9);

// Edges around a vertex, consecutive entries sharing a face; `cyclic` when
// the vertex is surrounded by faces.
struct Rotation {
  std::vector<int> edges;
  bool cyclic = false;
};
Rotation vertex_rotation(const SurfaceComplex& complex, int v);

struct TermCoefficients {
  double identity = 0.0;  // u
  double pauli = 0.0;     // u'
};

struct EquivalenceReport {
  int windows_checked = 0;
  std::vector<std::string> violations;
  // u, u' for every term lying in span{I, P^{(x)r}} (P = Z for stars, X for plaquettes).
  std::vector<std::optional<TermCoefficients>> coefficients;
  bool ok() const { return violations.empty(); }
};

// Checks the toric-code structure on every qualifying window; throws
// EquivalenceViolation when `throw_on_violation` and something fails.
EquivalenceReport verify_equivalence(const CLHInstance& calibrated, const RoleMap& roles, double tol = 1e-8,
                                     bool throw_on_violation = true);

std::optional<TermCoefficients> scalar_pauli_form(const LocalTerm& term, double tol = 1e-8);

enum class StringKind { PathX, CopathZ };
std::string_view string_kind_name(StringKind kind);

// Tensor product of calibrated X (path) or Z (copath) letters.
struct StringOperator {
  StringKind kind = StringKind::PathX;
  int target = -1;
  std::vector<int> support;  // edge indices, in ribbon order
  std::vector<char> letters;
  // Ribbon facts kept for reports and checks.
  std::vector<int> ribbon;
  int terminal_star = -1, terminal_plaquette = kVirtualPlaquette;
};

// Pauli string of `op` restricted to the given qubits ('I' off the support).
Mat string_on(const StringOperator& op, const std::vector<int>& qubits);

struct Certification {
  double target_anticommutator = 0.0;
  double max_commutator = 0.0;
  bool target_nontrivial = false;
  bool passed(double tol) const { return target_nontrivial && target_anticommutator < tol && max_commutator < tol; }
};

// Anticommutation with the traceless part of the target, commutation with all other terms.
Certification certify_string(const CLHInstance& calibrated, const StringOperator& op);

struct AccessOptions {
  int ribbon_budget = 8;
  double certify_tol = 1e-9;
  double algebra_tol = 1e-8;
};

// Certified string operator flipping `term`, or nullopt when no candidate
// ribbon within the budget certifies. Throws NoSpecialEdge without special qubits.
std::optional<StringOperator> access_check(const CLHInstance& calibrated, const RoleMap& roles, int term,
                                           const AccessOptions& options = {});

struct PuncturedHamiltonian {
  CLHInstance base;       // calibrated instance before puncturing
  CLHInstance punctured;  // removed terms replaced by the identity
  std::vector<int> removed;
  std::map<int, StringOperator> witnesses;
};

// All interior terms with a certified string operator.
std::map<int, StringOperator> fixable_set(const CLHInstance& calibrated, const RoleMap& roles,
                                          const AccessOptions& options = {});

PuncturedHamiltonian puncture(const CLHInstance& calibrated, const std::map<int, StringOperator>& witnesses);

}  // namespace clh2d
