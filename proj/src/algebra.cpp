#include "clh2d/algebra.hpp"

#include "clh2d/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace clh2d {

Mat OperatorSchmidt::reconstruct() const {
  std::vector<int> order = left_positions;
  order.insert(order.end(), right_positions.begin(), right_positions.end());
  const Eigen::Index dim = Eigen::Index{1} << nq;
  Mat out = Mat::Zero(dim, dim);
  for (int i = 0; i < rank(); ++i) out += weights[i] * embed(kron(left[i], right[i]), order, nq);
  return out;
}

OperatorSchmidt operator_schmidt(const Mat& h, const std::vector<int>& left_positions, int nq, double tol) {
  OperatorSchmidt out;
  out.nq = nq;
  out.left_positions = left_positions;
  for (int q = 0; q < nq; ++q)
    if (std::find(left_positions.begin(), left_positions.end(), q) == left_positions.end())
      out.right_positions.push_back(q);
  const Eigen::Index dl = Eigen::Index{1} << left_positions.size();
  const Eigen::Index dr = Eigen::Index{1} << out.right_positions.size();
  const Mat realigned = reshuffle(h, left_positions, nq);
  Eigen::JacobiSVD<Mat> svd(realigned, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cut = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cut) break;
    Mat l(dl, dl), r(dr, dr);
    for (Eigen::Index i = 0; i < dl; ++i)
      for (Eigen::Index j = 0; j < dl; ++j) l(i, j) = svd.matrixU()(i * dl + j, k);
    for (Eigen::Index i = 0; i < dr; ++i)
      for (Eigen::Index j = 0; j < dr; ++j) r(i, j) = std::conj(svd.matrixV()(i * dr + j, k));
    out.weights.push_back(s(k));
    out.left.push_back(std::move(l));
    out.right.push_back(std::move(r));
  }
  return out;
}

OperatorSchmidt operator_schmidt(const LocalTerm& term, const std::vector<int>& left_qubits, double tol) {
  std::vector<int> positions;
  for (int q : left_qubits) {
    const int p = position_in(term, q);
    if (p < 0) throw Error(ErrorCode::InvalidArgument, "qubit " + std::to_string(q) + " is not in the term");
    positions.push_back(p);
  }
  return operator_schmidt(term.matrix, positions, static_cast<int>(term.qubits.size()), tol);
}

namespace {

Vec flatten(const Mat& m) { return Eigen::Map<const Vec>(m.data(), m.size()); }

Mat unflatten(const Vec& v, Eigen::Index d) { return Eigen::Map<const Mat>(v.data(), d, d); }

class SpanBuilder {
 public:
  SpanBuilder(Eigen::Index d, double tol) : d_(d), tol_(tol), basis_(d * d, 0) {}

  bool add(const Mat& m) {
    Vec v = flatten(m);
    const double n = v.norm();
    if (n < 1e-300) return false;
    v /= n;
    for (int pass = 0; pass < 2; ++pass) v -= basis_ * (basis_.adjoint() * v);
    const double r = v.norm();
    if (r < tol_) return false;
    basis_.conservativeResize(Eigen::NoChange, basis_.cols() + 1);
    basis_.col(basis_.cols() - 1) = v / r;
    return true;
  }

  Eigen::Index size() const { return basis_.cols(); }
  Mat element(Eigen::Index i) const { return unflatten(basis_.col(i), d_); }

 private:
  Eigen::Index d_;
  double tol_;
  Mat basis_;
};

void phase_fix(Eigen::Ref<Eigen::Vector2cd> v) {
  for (int i = 0; i < 2; ++i)
    if (std::abs(v(i)) > 1e-9) {
      v *= std::conj(v(i)) / std::abs(v(i));
      return;
    }
}

// Columns: +1 eigenvector, then -1 eigenvector, each phase fixed.
Mat2 eigenframe(const Mat2& generator) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(generator);
  Mat2 w;
  w.col(0) = es.eigenvectors().col(1);
  w.col(1) = es.eigenvectors().col(0);
  phase_fix(w.col(0));
  phase_fix(w.col(1));
  return w;
}

}  // namespace

bool OperatorAlgebra::contains(const Mat& m, double tol) const { return residual(m) <= tol * std::max(1.0, m.norm()); }

double OperatorAlgebra::residual(const Mat& m) const {
  Vec v = flatten(m);
  for (const auto& b : basis) v -= flatten(b).dot(v) * flatten(b);
  return v.norm();
}

OperatorAlgebra generate_algebra(const std::vector<Mat>& generators, int nq, double tol) {
  const Eigen::Index d = Eigen::Index{1} << nq;
  SpanBuilder span(d, tol);
  span.add(Mat::Identity(d, d));
  for (const auto& g : generators) {
    span.add(g);
    span.add(g.adjoint());
  }
  bool grew = true;
  while (grew && span.size() < d * d) {
    grew = false;
    const Eigen::Index n = span.size();
    for (Eigen::Index i = 1; i < n; ++i)
      for (Eigen::Index j = 1; j < n; ++j) grew = span.add(span.element(i) * span.element(j)) || grew;
  }
  OperatorAlgebra out;
  for (Eigen::Index i = 0; i < span.size(); ++i) out.basis.push_back(span.element(i));
  return out;
}

OperatorAlgebra induced_algebra(const LocalTerm& term, const std::vector<int>& qubits, double tol) {
  const auto schmidt = operator_schmidt(term, qubits);
  auto out = generate_algebra(schmidt.left, static_cast<int>(qubits.size()), tol);
  out.qubits = qubits;
  return out;
}

double subspace_distance(const OperatorAlgebra& a, const OperatorAlgebra& b) {
  if (a.dimension() != b.dimension()) return 1.0;
  double worst = 0.0;
  for (const auto& m : a.basis) worst = std::max(worst, b.residual(m));
  for (const auto& m : b.basis) worst = std::max(worst, a.residual(m));
  return worst;
}

std::string_view qubit_class_name(QubitClass c) {
  switch (c) {
    case QubitClass::Trivial: return "Trivial";
    case QubitClass::PauliLine: return "PauliLine";
    case QubitClass::Full: return "Full";
  }
  return "?";
}

Mat2 pauli_generator(const Mat2& element) {
  Mat2 h = element + element.adjoint();
  if (h.norm() < 1e-8 * element.norm()) h = cplx(0, 1) * (element - element.adjoint());
  h -= (h.trace() / 2.0) * Mat2::Identity();
  h /= std::sqrt((h * h).trace().real() / 2.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const cplx x = h(i, j);
      if (std::abs(x) <= 1e-9) continue;
      const bool negative = std::abs(x.real()) > 1e-12 ? x.real() < 0 : x.imag() < 0;
      return negative ? Mat2(-h) : h;
    }
  return h;
}

QubitAlgebraClass classify_qubit_algebra(const OperatorAlgebra& algebra) {
  QubitAlgebraClass out;
  switch (algebra.dimension()) {
    case 1: out.tag = QubitClass::Trivial; break;
    case 2:
      out.tag = QubitClass::PauliLine;
      out.generator = pauli_generator(algebra.basis[1]);
      break;
    case 3: throw Error(ErrorCode::DimThree, "three-dimensional single-qubit algebra");
    case 4: out.tag = QubitClass::Full; break;
    default: throw Error(ErrorCode::InvalidArgument, "not a single-qubit algebra");
  }
  return out;
}

NormalForm anticommute_normal_form(const Mat2& c, const Mat2& d, double tol) {
  if (c.norm() < tol || d.norm() < tol) throw Error(ErrorCode::NotAnticommuting, "operators must be nonzero");
  if (anticommutator_norm(c, d) > tol * std::max(1.0, c.norm() * d.norm()))
    throw Error(ErrorCode::NotAnticommuting, "{C, D} != 0");
  NormalForm out;
  const double scale = c.norm() * c.norm();
  out.regular = std::abs(c.determinant()) > 1e-8 * scale;
  if (out.regular) {
    Mat2 u = eigenframe(pauli_generator(c));
    // Rotate the off-diagonal of D to the positive real axis.
    const Mat2 dd = u.adjoint() * d * u;
    const cplx off = dd(0, 1);
    if (std::abs(off) > tol) {
      Mat2 v = Mat2::Identity();
      v(1, 1) = std::conj(off) / std::abs(off);
      u = u * v;
    }
    out.unitary = u;
  } else {
    Eigen::JacobiSVD<Mat2> svd(c, Eigen::ComputeFullU);
    Mat2 u = svd.matrixU();
    phase_fix(u.col(0));
    phase_fix(u.col(1));
    out.unitary = u;
  }
  return out;
}

int QubitActions::nontrivial_stars() const {
  int n = 0;
  for (const auto& [t, c] : stars) n += c.tag != QubitClass::Trivial;
  return n;
}

int QubitActions::nontrivial_plaquettes() const {
  int n = 0;
  for (const auto& [t, c] : plaquettes) n += c.tag != QubitClass::Trivial;
  return n;
}

std::vector<QubitActions> qubit_actions(const CLHInstance& instance, double tol) {
  std::vector<QubitActions> out(instance.qubit_count());
  for (int q = 0; q < instance.qubit_count(); ++q)
    for (int t : instance.terms_on_qubit(q)) {
      const auto& term = instance.term(t);
      auto cls = classify_qubit_algebra(induced_algebra(term, {q}, tol));
      (term.kind == TermKind::Star ? out[q].stars : out[q].plaquettes).push_back({t, cls});
    }
  return out;
}

QubitCalibration calibrate(const CLHInstance& instance, const Tolerances& tol,
                           const std::vector<std::optional<Eigen::Vector2cd>>& idle_states) {
  const auto actions = qubit_actions(instance, tol.rank);
  QubitCalibration out;
  Mat2 hadamard;
  hadamard << 1, 1, 1, -1;
  hadamard /= std::sqrt(2.0);
  for (int q = 0; q < instance.qubit_count(); ++q) {
    const auto& act = actions[q];
    const Mat2* a = nullptr;
    const Mat2* b = nullptr;
    for (const auto& [t, c] : act.stars)
      if (!a && c.tag == QubitClass::PauliLine) a = &c.generator;
    for (const auto& [t, c] : act.plaquettes)
      if (!b && c.tag == QubitClass::PauliLine) b = &c.generator;
    Mat2 u = Mat2::Identity();
    if (a) {
      u = eigenframe(*a).adjoint();
      if (b) {
        const Mat2 bb = u * *b * u.adjoint();
        const cplx off = bb(0, 1);
        if (std::abs(off) < 1e-6)
          throw Error(ErrorCode::CalibrationConflict,
                      "star and plaquette lines commute on qubit " + instance.complex().edge_id(q));
        const bool interior = act.nontrivial_stars() >= 2 && act.nontrivial_plaquettes() >= 2;
        if (interior && std::abs(bb(0, 0)) > 1e-6)
          throw Error(ErrorCode::CalibrationConflict,
                      "plaquette line on interior qubit " + instance.complex().edge_id(q) + " has a Z component");
        Mat2 v = Mat2::Identity();
        v(1, 1) = std::conj(off) / std::abs(off);
        u = v.adjoint() * u;
      }
    } else if (b) {
      u = hadamard * eigenframe(*b).adjoint();
    } else if (act.nontrivial_stars() + act.nontrivial_plaquettes() == 0 && q < static_cast<int>(idle_states.size()) &&
               idle_states[q]) {
      const Eigen::Vector2cd alpha = idle_states[q]->normalized();
      const Eigen::Vector2cd perp(-std::conj(alpha(1)), std::conj(alpha(0)));
      u.row(0) = alpha.adjoint();
      u.row(1) = perp.adjoint();
    }
    out.unitaries.push_back(u);
  }
  return out;
}

CLHInstance apply_calibration(const CLHInstance& instance, const QubitCalibration& calibration) {
  return conjugate(instance, calibration.unitaries);
}

std::string_view two_qubit_kind_name(TwoQubitKind kind) {
  switch (kind) {
    case TwoQubitKind::ZZ: return "ZZ";
    case TwoQubitKind::XX: return "XX";
    case TwoQubitKind::Other: return "Other";
  }
  return "?";
}

TwoQubitStructure two_qubit_structure(const CLHInstance& instance, int term, int q1, int q2, double tol) {
  TwoQubitStructure out;
  out.algebra = induced_algebra(instance.term(term), {q1, q2}, tol);
  if (out.algebra.dimension() == 2) {
    if (out.algebra.contains(pauli_string("ZZ"), tol))
      out.kind = TwoQubitKind::ZZ;
    else if (out.algebra.contains(pauli_string("XX"), tol))
      out.kind = TwoQubitKind::XX;
  }
  return out;
}

OperatorAlgebra joint_qubit_algebra(const CLHInstance& instance, int qubit, double tol) {
  std::vector<Mat> generators;
  for (int t : instance.terms_on_qubit(qubit)) {
    const auto schmidt = operator_schmidt(instance.term(t), {qubit});
    generators.insert(generators.end(), schmidt.left.begin(), schmidt.left.end());
  }
  auto out = generate_algebra(generators, 1, tol);
  out.qubits = {qubit};
  return out;
}

}  // namespace clh2d
