#include "clh2d/state.hpp"

#include "clh2d/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <numbers>
#include <set>

namespace clh2d {

namespace {

constexpr double kSnap = 1e-10;

// Keeps dense and tableau probabilities bit-identical on stabilizer states.
double snap(double p) {
  if (p < kSnap) return 0.0;
  if (p > 1.0 - kSnap) return 1.0;
  if (std::abs(p - 0.5) < kSnap) return 0.5;
  return p;
}

void validate_pauli(const PauliOp& p, int n) {
  if (p.letters.size() != p.qubits.size())
    throw Error(ErrorCode::InvalidArgument, "Pauli letters and qubits differ in length");
  if (p.sign != 1 && p.sign != -1) throw Error(ErrorCode::InvalidArgument, "Pauli sign must be +1 or -1");
  std::set<int> seen;
  for (std::size_t i = 0; i < p.qubits.size(); ++i) {
    const int q = p.qubits[i];
    if (q < 0 || q >= n) throw Error(ErrorCode::InvalidArgument, "Pauli qubit out of range", {"qubit=" + std::to_string(q)});
    if (!seen.insert(q).second) throw Error(ErrorCode::InvalidArgument, "repeated Pauli qubit", {"qubit=" + std::to_string(q)});
    if (std::string_view("IXYZ").find(p.letters[i]) == std::string_view::npos)
      throw Error(ErrorCode::InvalidArgument, "unknown Pauli letter");
  }
}

// Bit masks of a Pauli word on a dense register; qubit 0 is the most significant bit.
struct DenseWord {
  std::uint64_t x = 0, z = 0;
  cplx phase = 1.0;  // sign * i^(#Y)
};

DenseWord dense_word(const PauliOp& p, int n) {
  DenseWord w;
  int ys = 0;
  for (std::size_t i = 0; i < p.qubits.size(); ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - p.qubits[i]);
    const char c = p.letters[i];
    if (c == 'X' || c == 'Y') w.x |= bit;
    if (c == 'Z' || c == 'Y') w.z |= bit;
    if (c == 'Y') ++ys;
  }
  static const cplx powers[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  w.phase = static_cast<double>(p.sign) * powers[ys % 4];
  return w;
}

// out = W in, with Y = i X Z so that X^x Z^z |j> = (-1)^(z.j) |j xor x>.
void apply_dense(const DenseWord& w, const Vec& in, Vec& out) {
  out.resize(in.size());
  for (Eigen::Index j = 0; j < in.size(); ++j) {
    const auto u = static_cast<std::uint64_t>(j);
    const double s = (std::popcount(u & w.z) & 1) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(u ^ w.x)] = w.phase * s * in[j];
  }
}

void fix_global_phase(Vec& v) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < v.size(); ++j)
    if (std::abs(v[j]) > std::abs(v[best]) + 1e-12) best = j;
  if (std::abs(v[best]) > 0) v *= std::conj(v[best]) / std::abs(v[best]);
}

void check_spectrum(const Mat& o, const std::vector<int>& qubits) {
  if (o.rows() != (Eigen::Index{1} << qubits.size()) || o.cols() != o.rows())
    throw Error(ErrorCode::WrongDimension, "observable dimension does not match its qubits");
  if (hermitian_defect(o) > 1e-9) throw Error(ErrorCode::BadSpectrum, "observable is not Hermitian");
  if ((o * o - Mat::Identity(o.rows(), o.cols())).norm() > 1e-8)
    throw Error(ErrorCode::BadSpectrum, "observable spectrum is not within {+1, -1}");
}

}  // namespace

std::string_view backend_name(Backend backend) {
  return backend == Backend::Stabilizer ? "stabilizer" : "statevector";
}

std::optional<PauliOp> as_pauli(const Mat& m, const std::vector<int>& qubits, double tol) {
  if (m.rows() != (Eigen::Index{1} << qubits.size()) || m.cols() != m.rows()) return std::nullopt;
  std::optional<PauliOp> found;
  for (const auto& [word, c] : pauli_coefficients(m)) {
    if (std::abs(c) < tol) continue;
    if (found || std::abs(c.imag()) > tol || std::abs(std::abs(c.real()) - 1.0) > tol) return std::nullopt;
    found = PauliOp{qubits, word, c.real() > 0 ? 1 : -1};
  }
  return found;
}

Mat pauli_matrix(const PauliOp& p) { return static_cast<double>(p.sign) * pauli_string(p.letters); }

// ---- Tableau ----

Tableau::Tableau(int n) : n_(n), words_((n + 63) / 64) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "tableau needs at least one qubit");
  rows_.assign(2 * n, Row{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), false});
  for (int q = 0; q < n; ++q) {
    rows_[q].x[q / 64] |= std::uint64_t{1} << (q % 64);
    rows_[n + q].z[q / 64] |= std::uint64_t{1} << (q % 64);
  }
}

Tableau::Row Tableau::make_row(const PauliOp& p) const {
  validate_pauli(p, n_);
  Row r{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), p.sign < 0};
  for (std::size_t i = 0; i < p.qubits.size(); ++i) {
    const int q = p.qubits[i];
    const std::uint64_t bit = std::uint64_t{1} << (q % 64);
    const char c = p.letters[i];
    if (c == 'X' || c == 'Y') r.x[q / 64] |= bit;
    if (c == 'Z' || c == 'Y') r.z[q / 64] |= bit;
  }
  return r;
}

bool Tableau::anticommute(const Row& a, const Row& b) const {
  int parity = 0;
  for (int w = 0; w < words_; ++w) parity ^= std::popcount((a.x[w] & b.z[w]) ^ (a.z[w] & b.x[w])) & 1;
  return parity != 0;
}

void Tableau::multiply_into(Row& t, const Row& s) const {
  // Exponent of i picked up per qubit when multiplying s (left) by t (right).
  int phase = 2 * (t.negative ? 1 : 0) + 2 * (s.negative ? 1 : 0);
  for (int w = 0; w < words_; ++w) {
    const std::uint64_t x1 = s.x[w], z1 = s.z[w], x2 = t.x[w], z2 = t.z[w];
    const std::uint64_t plus = (x1 & z1 & z2 & ~x2) | (x1 & ~z1 & z2 & x2) | (~x1 & z1 & x2 & ~z2);
    const std::uint64_t minus = (x1 & z1 & x2 & ~z2) | (x1 & ~z1 & z2 & ~x2) | (~x1 & z1 & x2 & z2);
    phase += std::popcount(plus) - std::popcount(minus);
    t.x[w] ^= x1;
    t.z[w] ^= z1;
  }
  phase = ((phase % 4) + 4) % 4;
  t.negative = phase == 2;
}

double Tableau::probability_plus(const PauliOp& p) const {
  const int e = expectation(p);
  return e == 0 ? 0.5 : (e > 0 ? 1.0 : 0.0);
}

int Tableau::expectation(const PauliOp& p) const {
  const Row target = make_row(p);
  for (int i = n_; i < 2 * n_; ++i)
    if (anticommute(rows_[i], target)) return 0;
  Row scratch{std::vector<std::uint64_t>(words_, 0), std::vector<std::uint64_t>(words_, 0), false};
  for (int i = 0; i < n_; ++i)
    if (anticommute(rows_[i], target)) multiply_into(scratch, rows_[n_ + i]);
  return scratch.negative == target.negative ? 1 : -1;
}

int Tableau::project(const PauliOp& p, int outcome) {
  if (outcome != 1 && outcome != -1) throw Error(ErrorCode::InvalidArgument, "outcome must be +1 or -1");
  Row row = make_row(p);
  if (outcome < 0) row.negative = !row.negative;
  int pivot = -1;
  for (int i = n_; i < 2 * n_ && pivot < 0; ++i)
    if (anticommute(rows_[i], row)) pivot = i;
  if (pivot < 0) {
    if (expectation(p) != outcome) throw Error(ErrorCode::InvalidArgument, "projection onto a zero-probability outcome");
    return -1;
  }
  for (int i = 0; i < 2 * n_; ++i)
    if (i != pivot && anticommute(rows_[i], row)) multiply_into(rows_[i], rows_[pivot]);
  rows_[pivot - n_] = rows_[pivot];
  rows_[pivot] = std::move(row);
  return pivot - n_;
}

std::vector<int> Tableau::expansion(const PauliOp& p) const {
  const Row target = make_row(p);
  for (int i = n_; i < 2 * n_; ++i)
    if (anticommute(rows_[i], target)) throw Error(ErrorCode::InvalidArgument, "expansion needs a determined Pauli");
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (anticommute(rows_[i], target)) out.push_back(i);
  return out;
}

std::optional<int> Tableau::isolate(const PauliOp& p, const std::vector<bool>& locked) {
  const auto rows = expansion(p);
  int r = -1;
  for (int i : rows)
    if (r < 0 && !locked.at(i)) r = i;
  if (r < 0) return std::nullopt;
  // S_r <- prod S_i keeps the group; D_i <- D_r D_i keeps the pairing.
  for (int i : rows) {
    if (i == r) continue;
    multiply_into(rows_[n_ + r], rows_[n_ + i]);
    multiply_into(rows_[i], rows_[r]);
  }
  return r;
}

void Tableau::flip(int row) {
  if (row < 0 || row >= n_) throw Error(ErrorCode::InvalidArgument, "row out of range");
  const Row d = rows_[row];
  for (auto& r : rows_)
    if (anticommute(r, d)) r.negative = !r.negative;
}

PauliOp Tableau::destabilizer(int row) const {
  const std::string s = row_string(rows_.at(row));
  PauliOp op;
  for (int q = 0; q < n_; ++q)
    if (s[q + 1] != 'I') {
      op.qubits.push_back(q);
      op.letters += s[q + 1];
    }
  return op;
}

void Tableau::apply(const PauliOp& p) {
  const Row row = make_row(p);
  for (auto& r : rows_)
    if (anticommute(r, row)) r.negative = !r.negative;
}

std::string Tableau::row_string(const Row& r) const {
  std::string s(1, r.negative ? '-' : '+');
  for (int q = 0; q < n_; ++q) {
    const bool x = (r.x[q / 64] >> (q % 64)) & 1, z = (r.z[q / 64] >> (q % 64)) & 1;
    s += x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }
  return s;
}

std::vector<std::string> Tableau::stabilizers() const {
  std::vector<std::string> out;
  for (int i = n_; i < 2 * n_; ++i) out.push_back(row_string(rows_[i]));
  return out;
}

std::vector<std::string> Tableau::destabilizers() const {
  std::vector<std::string> out;
  for (int i = 0; i < n_; ++i) out.push_back(row_string(rows_[i]));
  return out;
}

Vec Tableau::to_statevector() const {
  if (n_ > 30) throw Error(ErrorCode::TooLarge, "tableau too large for a dense vector", {"qubits=" + std::to_string(n_)});
  const Eigen::Index dim = Eigen::Index{1} << n_;
  std::vector<DenseWord> gens;
  for (int i = n_; i < 2 * n_; ++i) {
    PauliOp op;
    op.sign = rows_[i].negative ? -1 : 1;
    const std::string s = row_string(rows_[i]);
    for (int q = 0; q < n_; ++q) {
      const char c = s[q + 1];
      if (c != 'I') {
        op.qubits.push_back(q);
        op.letters += c;
      }
    }
    gens.push_back(dense_word(op, n_));
  }
  // Project a generic vector; its overlap with the stabilizer state is non-zero
  // for all but a measure-zero set of phase choices.
  for (double step : {std::numbers::phi, std::numbers::sqrt2, std::numbers::pi}) {
    Vec v(dim), tmp;
    for (Eigen::Index j = 0; j < dim; ++j) v[j] = std::polar(1.0, step * static_cast<double>(j));
    for (const auto& g : gens) {
      apply_dense(g, v, tmp);
      v = 0.5 * (v + tmp);
    }
    const double norm = v.norm();
    if (norm > 1e-6) {
      v /= norm;
      fix_global_phase(v);
      return v;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "stabilizer projection vanished");
}

// ---- QuantumState ----

QuantumState QuantumState::zero(int n, Backend backend, int max_sv_qubits) {
  return from_tableau(Tableau(n), backend, max_sv_qubits);
}

QuantumState QuantumState::from_tableau(const Tableau& tableau, Backend backend, int max_sv_qubits) {
  QuantumState s;
  s.backend_ = backend;
  s.n_ = tableau.qubit_count();
  if (backend == Backend::Stabilizer) {
    s.tableau_ = tableau;
    return s;
  }
  if (s.n_ > max_sv_qubits)
    throw Error(ErrorCode::TooLarge, "statevector backend qubit cap exceeded",
                {"qubits=" + std::to_string(s.n_), "max_sv_qubits=" + std::to_string(max_sv_qubits)});
  s.psi_ = tableau.to_statevector();
  return s;
}

QuantumState QuantumState::from_amplitudes(const Vec& amplitudes) {
  QuantumState s;
  s.backend_ = Backend::Statevector;
  s.n_ = clh2d::qubit_count(amplitudes.size());
  const double norm = amplitudes.norm();
  if (std::abs(norm - 1.0) > 1e-8) throw Error(ErrorCode::InvalidArgument, "amplitudes are not normalized");
  s.psi_ = amplitudes / norm;
  return s;
}

Tableau& QuantumState::mutable_tableau() {
  if (!tableau_) throw Error(ErrorCode::BackendUnsupported, "state has no tableau");
  return *tableau_;
}

const Tableau& QuantumState::tableau() const {
  if (!tableau_) throw Error(ErrorCode::BackendUnsupported, "state has no tableau");
  return *tableau_;
}

const Vec& QuantumState::amplitudes() const {
  if (backend_ != Backend::Statevector) throw Error(ErrorCode::BackendUnsupported, "state has no amplitudes");
  return psi_;
}

double QuantumState::probability_plus(const PauliOp& p) const {
  if (tableau_) return tableau_->probability_plus(p);
  validate_pauli(p, n_);
  Vec tmp;
  apply_dense(dense_word(p, n_), psi_, tmp);
  return snap(0.5 * (1.0 + psi_.dot(tmp).real()));
}

double QuantumState::probability_plus(const Mat& o, const std::vector<int>& qubits) const {
  check_spectrum(o, qubits);
  if (tableau_) {
    const auto p = as_pauli(o, qubits);
    if (!p) throw Error(ErrorCode::BackendUnsupported, "stabilizer backend measures signed Pauli words only");
    return tableau_->probability_plus(*p);
  }
  const Mat plus = 0.5 * (Mat::Identity(o.rows(), o.cols()) + o);
  Vec tmp;
  apply_on_qubits(plus, qubits, n_, psi_, tmp);
  return snap(tmp.squaredNorm());
}

int QuantumState::measure(const PauliOp& p, Rng& rng) {
  const double pp = probability_plus(p);
  const int outcome = rng.uniform() < pp ? 1 : -1;
  if (tableau_) {
    tableau_->project(p, outcome);
    return outcome;
  }
  Vec tmp;
  apply_dense(dense_word(p, n_), psi_, tmp);
  psi_ = 0.5 * (psi_ + static_cast<double>(outcome) * tmp);
  psi_ /= psi_.norm();
  return outcome;
}

int QuantumState::measure(const Mat& o, const std::vector<int>& qubits, Rng& rng) {
  check_spectrum(o, qubits);
  if (tableau_) {
    const auto p = as_pauli(o, qubits);
    if (!p) throw Error(ErrorCode::BackendUnsupported, "stabilizer backend measures signed Pauli words only");
    return measure(*p, rng);
  }
  const int outcome = rng.uniform() < probability_plus(o, qubits) ? 1 : -1;
  const Mat proj = 0.5 * (Mat::Identity(o.rows(), o.cols()) + static_cast<double>(outcome) * o);
  Vec tmp;
  apply_on_qubits(proj, qubits, n_, psi_, tmp);
  psi_ = tmp / tmp.norm();
  return outcome;
}

void QuantumState::apply(const PauliOp& p) {
  if (tableau_) {
    tableau_->apply(p);
    return;
  }
  validate_pauli(p, n_);
  Vec tmp;
  apply_dense(dense_word(p, n_), psi_, tmp);
  psi_ = std::move(tmp);
}

void QuantumState::apply(const Mat& u, const std::vector<int>& qubits) {
  if (tableau_) {
    const auto p = as_pauli(u, qubits);
    if (!p) throw Error(ErrorCode::BackendUnsupported, "stabilizer backend applies Pauli words only");
    apply(*p);
    return;
  }
  if (!is_unitary(u, 1e-9)) throw Error(ErrorCode::InvalidArgument, "operator is not unitary");
  Vec tmp;
  apply_on_qubits(u, qubits, n_, psi_, tmp);
  psi_ = std::move(tmp);
}

double QuantumState::expectation(const Mat& op, const std::vector<int>& qubits) const {
  if (op.rows() != (Eigen::Index{1} << qubits.size()) || op.cols() != op.rows())
    throw Error(ErrorCode::WrongDimension, "operator dimension does not match its qubits");
  if (!tableau_) {
    Vec tmp;
    apply_on_qubits(op, qubits, n_, psi_, tmp);
    return psi_.dot(tmp).real();
  }
  // Linear in the Pauli expansion; each word has expectation 0 or +-1.
  if (qubits.size() > 8) throw Error(ErrorCode::TooLarge, "Pauli expansion too large");
  double total = 0.0;
  for (const auto& [word, c] : pauli_coefficients(op)) {
    if (std::abs(c) < 1e-14) continue;
    PauliOp p{qubits, word, 1};
    total += c.real() * tableau_->expectation(p);
  }
  return total;
}

// ---- free functions ----

Mat ground_projector(const Mat& h, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  const double lo = es.eigenvalues()(0);
  Mat p = Mat::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    if (es.eigenvalues()(i) < lo + tol) p += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  return p;
}

Mat satisfaction_observable(const Mat& h, double tol) {
  return 2.0 * ground_projector(h, tol) - Mat::Identity(h.rows(), h.cols());
}

int measure_observable(QuantumState& state, const Mat& observable, const std::vector<int>& qubits, Rng& rng) {
  return state.measure(observable, qubits, rng);
}

void apply_string(QuantumState& state, const StringOperator& op, const QubitCalibration* frame) {
  if (state.backend() == Backend::Statevector && frame) {
    for (std::size_t i = 0; i < op.support.size(); ++i) {
      const int q = op.support[i];
      const Mat2& u = frame->unitaries.at(q);
      const Mat letter = u.adjoint() * pauli(op.letters[i]) * u;
      state.apply(letter, {q});
    }
    return;
  }
  state.apply(PauliOp{op.support, std::string(op.letters.begin(), op.letters.end()), 1});
}

double state_energy(const QuantumState& state, const CLHInstance& instance) {
  double total = 0.0;
  for (const auto& t : instance.terms()) total += state.expectation(t.matrix, t.qubits);
  return total;
}

Vec to_original_frame(const Vec& psi, const QubitCalibration& calibration) {
  const int n = clh2d::qubit_count(psi.size());
  Vec out = psi, tmp;
  for (int q = 0; q < n; ++q) {
    apply_on_qubits(calibration.unitaries.at(q).adjoint(), {q}, n, out, tmp);
    out.swap(tmp);
  }
  return out;
}

}  // namespace clh2d
