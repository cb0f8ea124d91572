#pragma once

#include "clh2d/algebra.hpp"
#include "clh2d/rng.hpp"
#include "clh2d/structure.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace clh2d {

enum class Backend { Stabilizer, Statevector };
std::string_view backend_name(Backend backend);

// sign * (tensor product of letters over "IXYZ" on `qubits`).
struct PauliOp {
  std::vector<int> qubits;
  std::string letters;
  int sign = 1;
};

// Recognizes +-(Pauli word) up to tol; nothing otherwise.
std::optional<PauliOp> as_pauli(const Mat& m, const std::vector<int>& qubits, double tol = 1e-9);
Mat pauli_matrix(const PauliOp& p);

// Stabilizer tableau with destabilizers: rows 0..n-1 destabilize, rows n..2n-1 stabilize.
class Tableau {
 public:
  explicit Tableau(int n);  // |0...0>

  int qubit_count() const { return n_; }
  // Probability of the +1 outcome: 0, 1/2 or 1.
  double probability_plus(const PauliOp& p) const;
  // +-1 for an eigenstate, 0 otherwise.
  int expectation(const PauliOp& p) const;
  // Collapses onto the given outcome, which must have non-zero probability.
  // Returns the stabilizer row now equal to +-p, or -1 when p was already determined.
  int project(const PauliOp& p, int outcome);
  void apply(const PauliOp& p);
  // For a determined p: rewrites the generators so that an unlocked row equals
  // +-p and returns it; nothing when every row in its expansion is locked.
  std::optional<int> isolate(const PauliOp& p, const std::vector<bool>& locked);
  // Rows whose product is +-p, for a determined p.
  std::vector<int> expansion(const PauliOp& p) const;
  // Applies destabilizer `row`, negating stabilizer row `row` and no other.
  void flip(int row);
  PauliOp destabilizer(int row) const;
  // "+XZI"-style generators, qubit 0 first.
  std::vector<std::string> stabilizers() const;
  std::vector<std::string> destabilizers() const;
  // Dense amplitudes, global phase fixed so the largest amplitude is real positive.
  Vec to_statevector() const;

 private:
  struct Row {
    std::vector<std::uint64_t> x, z;
    bool negative = false;
  };
  Row make_row(const PauliOp& p) const;
  bool anticommute(const Row& a, const Row& b) const;
  void multiply_into(Row& target, const Row& source) const;  // target <- source * target
  std::string row_string(const Row& r) const;

  int n_;
  int words_;
  std::vector<Row> rows_;
};

class QuantumState {
 public:
  // |0...0>; the statevector backend refuses n > max_sv_qubits with TooLarge.
  static QuantumState zero(int n, Backend backend, int max_sv_qubits = 20);
  static QuantumState from_tableau(const Tableau& tableau, Backend backend, int max_sv_qubits = 20);
  static QuantumState from_amplitudes(const Vec& amplitudes);

  Backend backend() const { return backend_; }
  int qubit_count() const { return n_; }
  const Tableau& tableau() const;
  const Vec& amplitudes() const;

  double probability_plus(const PauliOp& p) const;
  double probability_plus(const Mat& observable, const std::vector<int>& qubits) const;
  Tableau& mutable_tableau();
  // Draws exactly one uniform u and returns +1 iff u < P(+1).
  int measure(const PauliOp& p, Rng& rng);
  // Any observable with spectrum in {+1, -1}; the stabilizer backend needs a
  // signed Pauli word (BackendUnsupported otherwise). BadSpectrum for anything else.
  int measure(const Mat& observable, const std::vector<int>& qubits, Rng& rng);
  void apply(const PauliOp& p);
  void apply(const Mat& unitary, const std::vector<int>& qubits);
  // <psi|O|psi>; the stabilizer backend needs a signed Pauli word.
  double expectation(const Mat& op, const std::vector<int>& qubits) const;

 private:
  QuantumState() = default;

  Backend backend_ = Backend::Statevector;
  int n_ = 0;
  std::optional<Tableau> tableau_;
  Vec psi_;
};

// Projector onto the eigenspace of the smallest eigenvalue (within tol).
Mat ground_projector(const Mat& h, double tol = 1e-9);
// 2 pi_h - I: +1 on the ground space of h.
Mat satisfaction_observable(const Mat& h, double tol = 1e-9);

// Free-function forms of the state operations.
int measure_observable(QuantumState& state, const Mat& observable, const std::vector<int>& qubits, Rng& rng);
// The stabilizer backend applies the calibrated letters directly; the
// statevector backend applies U_q^dagger P U_q when `frame` is given.
void apply_string(QuantumState& state, const StringOperator& op, const QubitCalibration* frame = nullptr);
// Sum of term expectations.
double state_energy(const QuantumState& state, const CLHInstance& instance);
// Maps a calibrated-frame vector back: psi -> (x)_q U_q^dagger psi.
Vec to_original_frame(const Vec& psi, const QubitCalibration& calibration);

}  // namespace clh2d
