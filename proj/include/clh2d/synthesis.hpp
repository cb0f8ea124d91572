#pragma once

#include "clh2d/partition.hpp"
#include "clh2d/reduction.hpp"
#include "clh2d/state.hpp"
#include "clh2d/structure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace clh2d {

enum class Branch { Closed, Punctured };
std::string_view branch_name(Branch branch);

enum class GroundMethod { Auto, Exact, Stabilizer };
std::string_view ground_method_name(GroundMethod method);

// h = identity * I + coefficient * word, word a Pauli string with sign +1.
struct PauliTerm {
  double identity = 0.0;
  double coefficient = 0.0;
  PauliOp word;
};
std::optional<PauliTerm> pauli_term_form(const LocalTerm& term, double tol = 1e-9);
bool is_pauli_form(const CLHInstance& instance, double tol = 1e-9);

struct TermOutcome {
  int term = -1;
  int value = 0;  // eigenvalue of 2 pi_h - I
};

struct SynthesisReport {
  Branch branch = Branch::Closed;
  Backend backend = Backend::Stabilizer;
  std::string oracle;  // what produced the starting state
  std::vector<TermOutcome> record;
  std::vector<StringOperator> corrections;
  std::vector<int> final_values;  // per term, re-measured deterministically
  double final_energy = 0.0;
  double reference_energy = 0.0;
  std::string reference_source;
  std::optional<bool> two_local;  // partition verdict when a triangulation was supplied
  bool certified = false;
};

struct SynthesisOptions {
  std::optional<Backend> backend;  // chosen from the instance when empty
  GroundMethod method = GroundMethod::Auto;
  int max_sv_qubits = 20;
  AccessOptions access;
  Tolerances tol;
  ReductionOptions reduction;
  const Triangulation* triangulation = nullptr;
  double energy_tol = 1e-6;
};

struct SynthesisResult {
  QuantumState state;  // in the calibrated frame
  SynthesisReport report;
  CLHInstance calibrated;  // reduced and calibrated instance the state lives on
  QubitCalibration calibration;
  ReductionWitness witness;
};

struct Prepared {
  ReductionResult reduced;
  QubitCalibration calibration;
  CLHInstance calibrated;
  RoleMap roles;
};

// Classical-qubit removal, calibration (idle qubits onto their witness
// states) and qubit roles: the shared front half of every pipeline.
Prepared prepare(const CLHInstance& instance, const SynthesisOptions& options = {});

// Closed branch on a calibrated instance: |0...0>, X strings between defected
// stars, then measure every plaquette and pair excitations with Z copaths.
SynthesisResult toric_groundstate(const CLHInstance& calibrated, std::uint64_t seed, const SynthesisOptions& options = {});

// Exact ground energy of a calibrated closed instance with scalar-Pauli terms.
double defected_ground_energy(const CLHInstance& calibrated, double tol = 1e-8);

struct GroundState {
  QuantumState state;
  std::string oracle;
  double energy = 0.0;
};

// Ground state of the punctured Hamiltonian by dense eigensolver or stabilizer completion.
GroundState punctured_groundstate(const CLHInstance& punctured, GroundMethod method, Backend backend, Rng& rng,
                                  int max_sv_qubits = 20);

// Reduction, calibration, then the closed or punctured branch.
SynthesisResult full_pipeline(const CLHInstance& instance, std::uint64_t seed, const SynthesisOptions& options = {});

// Deterministic eigenvalue of 2 pi_h - I; throws NotInvariant when the
// outcome probability is not within 1e-6 of 0 or 1.
int term_value(const QuantumState& state, const LocalTerm& term, double tol = 1e-6);

struct NpCertificate {
  Branch branch = Branch::Closed;
  ReductionWitness witness;
  QubitCalibration calibration;
  std::map<int, StringOperator> witnesses;
  std::optional<bool> two_local;
  std::string punctured_oracle;
  double punctured_ground_energy = 0.0;  // removed terms count as identities
  double removed_minimum = 0.0;          // sum of the smallest eigenvalue of every removed term
  double ground_energy = 0.0;            // punctured - #removed + removed_minimum
};

struct CertificateCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CertificateVerdict {
  std::vector<CertificateCheck> checks;
  bool accepted() const;
};

NpCertificate np_certificate(const CLHInstance& instance, const SynthesisOptions& options = {});
// Re-derives every component from the instance and the certificate data.
CertificateVerdict verify_certificate(const CLHInstance& instance, const NpCertificate& certificate,
                                      const SynthesisOptions& options = {});

}  // namespace clh2d
