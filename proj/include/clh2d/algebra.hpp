#pragma once

#include "clh2d/core.hpp"
#include "clh2d/instance.hpp"

#include <optional>
#include <vector>

namespace clh2d {

// h = sum_i weights[i] * left[i] (x) right[i] over positions `left_positions`
// and `right_positions` of an nq-qubit term; both factor families are
// orthonormal in the Hilbert-Schmidt inner product.
struct OperatorSchmidt {
  int nq = 0;
  std::vector<int> left_positions, right_positions;
  std::vector<double> weights;
  std::vector<Mat> left, right;

  int rank() const { return static_cast<int>(weights.size()); }
  Mat reconstruct() const;
};

OperatorSchmidt operator_schmidt(const Mat& h, const std::vector<int>& left_positions, int nq, double tol = 1e-10);
// `left_qubits` are qubit (edge) indices of the term.
OperatorSchmidt operator_schmidt(const LocalTerm& term, const std::vector<int>& left_qubits, double tol = 1e-10);

// A unital *-subalgebra of M_{2^r}, stored as a Hilbert-Schmidt orthonormal
// basis whose first element is I / sqrt(2^r).
struct OperatorAlgebra {
  std::vector<int> qubits;
  std::vector<Mat> basis;

  int dimension() const { return static_cast<int>(basis.size()); }
  bool contains(const Mat& m, double tol = 1e-8) const;
  // Norm of the part of m orthogonal to the algebra.
  double residual(const Mat& m) const;
};

// Smallest unital *-algebra containing the generators (fixed-point closure).
OperatorAlgebra generate_algebra(const std::vector<Mat>& generators, int nq, double tol = 1e-8);

// Algebra induced by the term on `qubits` (edge indices, in the given order).
OperatorAlgebra induced_algebra(const LocalTerm& term, const std::vector<int>& qubits, double tol = 1e-8);

// Largest principal angle sine between the two spans; 0 for equal algebras.
double subspace_distance(const OperatorAlgebra& a, const OperatorAlgebra& b);

enum class QubitClass { Trivial, PauliLine, Full };
std::string_view qubit_class_name(QubitClass c);

struct QubitAlgebraClass {
  QubitClass tag = QubitClass::Trivial;
  Mat2 generator = Mat2::Zero();  // Hermitian, squares to I; set for PauliLine
};

// Throws DimThree for a three-dimensional span.
QubitAlgebraClass classify_qubit_algebra(const OperatorAlgebra& algebra);

// Hermitian, traceless, unit-square representative of a traceless element,
// sign fixed so the first nonzero entry has positive real part.
Mat2 pauli_generator(const Mat2& element);

struct NormalForm {
  bool regular = true;
  Mat2 unitary = Mat2::Identity();  // U^dagger C U ~ Z (or I + Z)
};

NormalForm anticommute_normal_form(const Mat2& c, const Mat2& d, double tol = 1e-9);

// Per-qubit unitaries with calibrated terms h' = U h U^dagger.
struct QubitCalibration {
  std::vector<Mat2> unitaries;
};

// Classification of every term acting on each qubit.
struct QubitActions {
  std::vector<std::pair<int, QubitAlgebraClass>> stars, plaquettes;

  int nontrivial_stars() const;
  int nontrivial_plaquettes() const;
};
std::vector<QubitActions> qubit_actions(const CLHInstance& instance, double tol = 1e-8);

// Star lines go to Z, plaquette lines into span{Z, X} with positive X part
// (exactly X on interior qubits). Qubits no term acts on use `idle_states[q]`
// when given, so that U |idle> = |0>.
QubitCalibration calibrate(const CLHInstance& instance, const Tolerances& tol = {},
                           const std::vector<std::optional<Eigen::Vector2cd>>& idle_states = {});

CLHInstance apply_calibration(const CLHInstance& instance, const QubitCalibration& calibration);

enum class TwoQubitKind { ZZ, XX, Other };
std::string_view two_qubit_kind_name(TwoQubitKind kind);

struct TwoQubitStructure {
  TwoQubitKind kind = TwoQubitKind::Other;
  OperatorAlgebra algebra;
};

TwoQubitStructure two_qubit_structure(const CLHInstance& instance, int term, int q1, int q2, double tol = 1e-8);

// The algebra generated by every term's induced algebra on q.
OperatorAlgebra joint_qubit_algebra(const CLHInstance& instance, int qubit, double tol = 1e-8);

}  // namespace clh2d
