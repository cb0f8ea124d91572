#include "clh2d/instance.hpp"

#include "clh2d/linalg.hpp"
#include "clh2d/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace clh2d {

std::string_view kind_name(TermKind kind) { return kind == TermKind::Star ? "star" : "plaquette"; }

std::string CLHInstance::term_label(int t) const {
  const auto& term = terms_.at(t);
  const std::string& id = term.kind == TermKind::Star ? complex_->vertex_id(term.site) : complex_->face_id(term.site);
  return std::string(kind_name(term.kind)) + ":" + id;
}

std::vector<int> site_qubits(const SurfaceComplex& complex, TermKind kind, int site) {
  return kind == TermKind::Star ? complex.vertex_edges(site) : complex.face_edges(site);
}

int position_in(const LocalTerm& term, int qubit) {
  auto it = std::find(term.qubits.begin(), term.qubits.end(), qubit);
  return it == term.qubits.end() ? -1 : static_cast<int>(it - term.qubits.begin());
}

bool acts_trivially(const LocalTerm& term, int qubit, double tol) {
  const int pos = position_in(term, qubit);
  if (pos < 0) return true;
  const int r = static_cast<int>(term.qubits.size());
  const Mat rest = partial_trace(term.matrix, pos, r) / 2.0;
  return (term.matrix - insert_identity(rest, pos, r)).norm() < tol;
}

namespace {

struct SchmidtFactors {
  std::vector<double> weights;
  std::vector<Mat> factors;  // unit-norm operators on the shared qubits
};

SchmidtFactors shared_factors(const LocalTerm& t, const std::vector<int>& shared) {
  std::vector<int> left;
  for (int q : shared) left.push_back(position_in(t, q));
  const int r = static_cast<int>(t.qubits.size());
  const Mat realigned = reshuffle(t.matrix, left, r);
  Eigen::JacobiSVD<Mat> svd(realigned, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const Eigen::Index d = Eigen::Index{1} << shared.size();
  SchmidtFactors out;
  const double cut = 1e-14 * std::max(1.0, s.size() ? s(0) : 0.0);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) <= cut) break;
    Mat f(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) f(i, j) = svd.matrixU()(i * d + j, k);
    out.weights.push_back(s(k));
    out.factors.push_back(std::move(f));
  }
  return out;
}

void fail(ErrorCode code, const std::string& message, std::vector<std::string>& details, ErrorCode& first,
          bool& failed) {
  if (!failed) first = code;
  failed = true;
  details.push_back(std::string(error_name(code)) + ": " + message);
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

}  // namespace

double commutator_residual(const LocalTerm& l, const LocalTerm& r) {
  std::vector<int> shared;
  for (int q : l.qubits)
    if (position_in(r, q) >= 0) shared.push_back(q);
  if (shared.empty()) return 0.0;
  std::sort(shared.begin(), shared.end());
  const auto a = shared_factors(l, shared);
  const auto b = shared_factors(r, shared);
  double total = 0.0;
  for (std::size_t i = 0; i < a.factors.size(); ++i)
    for (std::size_t j = 0; j < b.factors.size(); ++j) {
      const double w = a.weights[i] * b.weights[j];
      const double c = commutator_norm(a.factors[i], b.factors[j]);
      total += w * w * c * c;
    }
  return std::sqrt(total);
}

CommutationReport check_commutation(const CLHInstance& instance, double tol) {
  CommutationReport report;
  const auto& c = instance.complex();
  for (int q = 0; q < c.edge_count(); ++q) {
    const auto& on = instance.terms_on_qubit(q);
    for (std::size_t i = 0; i < on.size(); ++i)
      for (std::size_t j = i + 1; j < on.size(); ++j) {
        const auto& a = instance.term(on[i]);
        const auto& b = instance.term(on[j]);
        // Visit each overlapping pair once, at its smallest shared qubit.
        int smallest = -1;
        for (int x : a.qubits)
          if (position_in(b, x) >= 0 && (smallest < 0 || x < smallest)) smallest = x;
        if (smallest != q) continue;
        const double res = commutator_residual(a, b);
        ++report.pairs_checked;
        report.max_residual = std::max(report.max_residual, res);
        if (res >= tol) report.failures.push_back({{on[i], on[j]}, res});
      }
  }
  return report;
}

CLHInstance attach_terms(std::shared_ptr<const SurfaceComplex> complex, const TermMatrices& matrices,
                         const Tolerances& tol) {
  const auto& c = *complex;
  if (static_cast<int>(matrices.stars.size()) != c.vertex_count() ||
      static_cast<int>(matrices.plaquettes.size()) != c.face_count())
    throw Error(ErrorCode::WrongDimension, "need exactly one term per vertex and per face");
  CLHInstance inst;
  inst.complex_ = complex;
  std::vector<std::string> details;
  ErrorCode first = ErrorCode::WrongDimension;
  bool failed = false;

  auto add = [&](TermKind kind, int site, const Mat& m) {
    LocalTerm t;
    t.kind = kind;
    t.site = site;
    t.qubits = site_qubits(c, kind, site);
    t.matrix = m;
    inst.terms_.push_back(std::move(t));
  };
  for (int v = 0; v < c.vertex_count(); ++v) add(TermKind::Star, v, matrices.stars[v]);
  for (int f = 0; f < c.face_count(); ++f) add(TermKind::Plaquette, f, matrices.plaquettes[f]);

  for (int t = 0; t < inst.term_count(); ++t) {
    const auto& term = inst.terms_[t];
    const Eigen::Index d = Eigen::Index{1} << term.qubits.size();
    if (term.matrix.rows() != d || term.matrix.cols() != d) {
      fail(ErrorCode::WrongDimension,
           inst.term_label(t) + " is " + std::to_string(term.matrix.rows()) + "x" +
               std::to_string(term.matrix.cols()) + ", expected " + std::to_string(d),
           details, first, failed);
      continue;
    }
    const double herm = hermitian_defect(term.matrix);
    if (herm > tol.hermitian * std::max(1.0, term.matrix.norm())) {
      fail(ErrorCode::NotHermitian, inst.term_label(t) + " deviates by " + fmt_double(herm), details, first, failed);
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(term.matrix, Eigen::EigenvaluesOnly);
    const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
    if (norm > 1.0 + tol.norm_slack) {
      fail(ErrorCode::NormExceeded, inst.term_label(t) + " has norm " + std::to_string(norm), details, first, failed);
    } else if (norm > 1.0 + 1e-12) {
      inst.warnings_.push_back(inst.term_label(t) + " has norm " + std::to_string(norm) + " slightly above 1");
    }
  }
  if (failed) throw Error(first, "invalid terms", details);

  inst.on_qubit_.assign(c.edge_count(), {});
  for (int t = 0; t < inst.term_count(); ++t)
    for (int q : inst.terms_[t].qubits) inst.on_qubit_[q].push_back(t);

  const auto report = check_commutation(inst, tol.commute);
  if (!report.failures.empty()) {
    for (const auto& [pair, res] : report.failures)
      details.push_back("NonCommuting: " + inst.term_label(pair.first) + " / " + inst.term_label(pair.second) +
                        " residual " + fmt_double(res));
    const auto& f = report.failures.front();
    throw Error(ErrorCode::NonCommuting,
                inst.term_label(f.first.first) + " and " + inst.term_label(f.first.second) + " do not commute (residual " +
                    fmt_double(f.second) + ")",
                details);
  }
  return inst;
}

CLHInstance attach_terms(const SurfaceComplex& complex, const TermMatrices& matrices, const Tolerances& tol) {
  return attach_terms(std::make_shared<const SurfaceComplex>(complex), matrices, tol);
}

CLHInstance CLHInstance::with_matrices(const std::vector<Mat>& matrices, const Tolerances& tol) const {
  TermMatrices tm;
  const int nv = complex_->vertex_count();
  for (int t = 0; t < term_count(); ++t) (t < nv ? tm.stars : tm.plaquettes).push_back(matrices.at(t));
  return attach_terms(complex_, tm, tol);
}

DefectCoefficients DefectCoefficients::toric(const SurfaceComplex& complex) {
  DefectCoefficients d;
  d.u.assign(complex.vertex_count(), 0.0);
  d.u_prime.assign(complex.vertex_count(), -1.0);
  d.v.assign(complex.face_count(), 0.0);
  d.v_prime.assign(complex.face_count(), -1.0);
  return d;
}

namespace {

Mat scalar_pauli(double a, double b, char letter, int r) {
  return a * identity_on(r) + b * pauli_string(std::string(r, letter));
}

}  // namespace

CLHInstance surface_code_instance(const SurfaceComplex& complex, const DefectCoefficients* coefficients,
                                  const std::vector<int>& identity_stars) {
  const DefectCoefficients d = coefficients ? *coefficients : DefectCoefficients::toric(complex);
  TermMatrices tm;
  for (int v = 0; v < complex.vertex_count(); ++v) {
    const int r = static_cast<int>(complex.vertex_edges(v).size());
    const bool idle = std::find(identity_stars.begin(), identity_stars.end(), v) != identity_stars.end();
    tm.stars.push_back(idle ? identity_on(r) : scalar_pauli(d.u.at(v), d.u_prime.at(v), 'Z', r));
  }
  for (int f = 0; f < complex.face_count(); ++f) {
    const int r = static_cast<int>(complex.face_edges(f).size());
    tm.plaquettes.push_back(scalar_pauli(d.v.at(f), d.v_prime.at(f), 'X', r));
  }
  return attach_terms(complex, tm);
}

CLHInstance toric_instance(const SurfaceComplex& complex) {
  if (!complex.is_closed()) throw Error(ErrorCode::NotClosed, "toric code needs a closed complex");
  return surface_code_instance(complex);
}

CLHInstance defected_toric_instance(const SurfaceComplex& complex, const DefectCoefficients& coefficients) {
  if (!complex.is_closed()) throw Error(ErrorCode::NotClosed, "defected toric code needs a closed complex");
  for (double x : coefficients.u_prime)
    if (x == 0.0) throw Error(ErrorCode::InvalidArgument, "u' must be nonzero");
  for (double x : coefficients.v_prime)
    if (x == 0.0) throw Error(ErrorCode::InvalidArgument, "v' must be nonzero");
  return surface_code_instance(complex, &coefficients);
}

CLHInstance conjugate(const CLHInstance& instance, const std::vector<Mat2>& unitaries) {
  std::vector<Mat> mats;
  for (const auto& term : instance.terms()) {
    std::vector<Mat> factors;
    for (int q : term.qubits) factors.push_back(unitaries.at(q));
    const Mat u = kron_all(factors);
    Mat h = u * term.matrix * u.adjoint();
    h = 0.5 * (h + h.adjoint()).eval();
    mats.push_back(std::move(h));
  }
  return instance.with_matrices(mats);
}

Scrambled scramble_with_unitaries(const CLHInstance& instance, std::uint64_t seed) {
  Rng rng = Rng::derive(seed, "scramble");
  std::vector<Mat2> us;
  for (int q = 0; q < instance.qubit_count(); ++q) us.push_back(haar_unitary(rng));
  return {conjugate(instance, us), us};
}

CLHInstance scramble(const CLHInstance& instance, std::uint64_t seed) {
  return scramble_with_unitaries(instance, seed).instance;
}

double energy(const CLHInstance& instance, const Vec& state) {
  const int n = instance.qubit_count();
  double total = 0.0;
  Vec tmp;
  for (const auto& term : instance.terms()) {
    apply_on_qubits(term.matrix, term.qubits, n, state, tmp);
    total += state.dot(tmp).real();
  }
  return total;
}

namespace {

struct Block {
  std::vector<int> qubits;  // global qubit ids, increasing
  std::vector<std::pair<Mat, std::vector<int>>> terms;  // matrix and local positions
};

struct Decomposition {
  double constant = 0.0;
  std::vector<Block> blocks;
  std::vector<int> idle;
};

// Strips qubits a term acts trivially on, then groups qubits into connected blocks.
Decomposition decompose(const CLHInstance& instance) {
  Decomposition out;
  std::vector<std::pair<Mat, std::vector<int>>> reduced;
  for (const auto& term : instance.terms()) {
    Mat m = term.matrix;
    std::vector<int> qs = term.qubits;
    for (int pos = static_cast<int>(qs.size()) - 1; pos >= 0; --pos) {
      const int r = static_cast<int>(qs.size());
      const Mat rest = partial_trace(m, pos, r) / 2.0;
      if ((m - insert_identity(rest, pos, r)).norm() < 1e-12 * std::max(1.0, m.norm())) {
        m = rest;
        qs.erase(qs.begin() + pos);
      }
    }
    if (qs.empty()) {
      out.constant += m(0, 0).real();
    } else {
      reduced.push_back({m, qs});
    }
  }
  const int n = instance.qubit_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> active(n, false);
  for (const auto& [m, qs] : reduced) {
    for (int q : qs) active[q] = true;
    for (std::size_t i = 1; i < qs.size(); ++i) parent[find(qs[i])] = find(qs[0]);
  }
  std::map<int, int> block_of_root;
  for (int q = 0; q < n; ++q) {
    if (!active[q]) {
      out.idle.push_back(q);
      continue;
    }
    const int root = find(q);
    auto [it, inserted] = block_of_root.emplace(root, static_cast<int>(out.blocks.size()));
    if (inserted) out.blocks.emplace_back();
    out.blocks[it->second].qubits.push_back(q);
  }
  for (const auto& [m, qs] : reduced) {
    auto& block = out.blocks[block_of_root.at(find(qs[0]))];
    std::vector<int> local;
    for (int q : qs)
      local.push_back(static_cast<int>(std::lower_bound(block.qubits.begin(), block.qubits.end(), q) -
                                       block.qubits.begin()));
    block.terms.push_back({m, local});
  }
  return out;
}

struct GroundPair {
  double value = 0.0;
  Vec vector;
};

void apply_block(const Block& block, const Vec& in, Vec& out) {
  const int nq = static_cast<int>(block.qubits.size());
  out = Vec::Zero(in.size());
  Vec tmp;
  for (const auto& [m, pos] : block.terms) {
    apply_on_qubits(m, pos, nq, in, tmp);
    out += tmp;
  }
}

GroundPair dense_ground(const Block& block, bool want_vector) {
  const int nq = static_cast<int>(block.qubits.size());
  const Eigen::Index dim = Eigen::Index{1} << nq;
  Mat h = Mat::Zero(dim, dim);
  for (const auto& [m, pos] : block.terms) h += embed(m, pos, nq);
  Eigen::SelfAdjointEigenSolver<Mat> es(h, want_vector ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  GroundPair g;
  g.value = es.eigenvalues()(0);
  if (want_vector) g.vector = es.eigenvectors().col(0);
  return g;
}

// Explicitly restarted Lanczos with full reorthogonalization.
GroundPair lanczos_ground(const Block& block, std::uint64_t seed, double tol) {
  const int nq = static_cast<int>(block.qubits.size());
  const Eigen::Index dim = Eigen::Index{1} << nq;
  const Eigen::Index budget = std::max<Eigen::Index>(12, (Eigen::Index{256} << 20) / (16 * dim));
  const Eigen::Index steps = std::min<Eigen::Index>({dim, 80, budget});
  Rng rng = Rng::derive(seed, "lanczos");
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  v.normalize();
  GroundPair best;
  Vec w, hx;
  for (int restart = 0; restart < 200; ++restart) {
    Mat basis(dim, steps);
    std::vector<double> alpha, beta;
    basis.col(0) = v;
    Eigen::Index m = 0;
    for (Eigen::Index j = 0; j < steps; ++j) {
      apply_block(block, basis.col(j), w);
      const double a = basis.col(j).dot(w).real();
      alpha.push_back(a);
      m = j + 1;
      for (int pass = 0; pass < 2; ++pass) w -= basis.leftCols(m) * (basis.leftCols(m).adjoint() * w);
      const double b = w.norm();
      if (j + 1 == steps || b < 1e-12) break;
      beta.push_back(b);
      basis.col(j + 1) = w / b;
    }
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
      t(j, j) = alpha[j];
      if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const Eigen::VectorXcd s = es.eigenvectors().col(0).cast<cplx>();
    Vec x = basis.leftCols(m) * s;
    x.normalize();
    apply_block(block, x, hx);
    const double theta = x.dot(hx).real();
    const double residual = (hx - theta * x).norm();
    best.value = theta;
    best.vector = x;
    if (residual < tol * std::max(1.0, std::abs(theta))) break;
    v = x;
  }
  return best;
}

GroundPair block_ground(const Block& block, const ExactOptions& options, std::uint64_t seed, bool want_vector) {
  const int nq = static_cast<int>(block.qubits.size());
  if (nq > options.max_qubits)
    throw Error(ErrorCode::TooLarge, "connected block of " + std::to_string(nq) + " qubits exceeds cap " +
                                         std::to_string(options.max_qubits));
  if (nq <= options.dense_below) return dense_ground(block, want_vector);
  return lanczos_ground(block, seed, options.tol);
}

}  // namespace

namespace {

// FNV-1a over the qubit lists and matrix entries of every term.
std::uint64_t content_hash(const CLHInstance& instance) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) h = (h ^ bytes[i]) * 0x100000001b3ULL;
  };
  const int n = instance.qubit_count();
  feed(&n, sizeof n);
  for (const auto& t : instance.terms()) {
    feed(t.qubits.data(), t.qubits.size() * sizeof(int));
    feed(t.matrix.data(), static_cast<std::size_t>(t.matrix.size()) * sizeof(cplx));
  }
  return h;
}

}  // namespace

double exact_ground_energy(const CLHInstance& instance, const ExactOptions& options) {
  std::filesystem::path cached;
  if (!options.cache_dir.empty()) {
    char name[40];
    std::snprintf(name, sizeof name, "exact-%016llx.txt", static_cast<unsigned long long>(content_hash(instance)));
    cached = std::filesystem::path(options.cache_dir) / name;
    std::ifstream in(cached);
    double value = 0.0;
    if (in >> value) return value;
  }
  const auto dec = decompose(instance);
  double total = dec.constant;
  for (std::size_t b = 0; b < dec.blocks.size(); ++b)
    total += block_ground(dec.blocks[b], options, 0x5eedULL + b, false).value;
  if (!cached.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cached.parent_path(), ec);
    std::ofstream out(cached);
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g\n", total);
    out << buf;
  }
  return total;
}

Vec exact_ground_state(const CLHInstance& instance, std::uint64_t seed, const ExactOptions& options,
                       const std::vector<Eigen::Vector2cd>& idle_states) {
  const int n = instance.qubit_count();
  if (n > 20) throw Error(ErrorCode::TooLarge, "ground state of " + std::to_string(n) + " qubits exceeds 20");
  const auto dec = decompose(instance);
  std::vector<Vec> parts;
  for (std::size_t b = 0; b < dec.blocks.size(); ++b)
    parts.push_back(block_ground(dec.blocks[b], options, mix_label(seed, "block" + std::to_string(b)), true).vector);
  std::vector<Eigen::Vector2cd> local(n, Eigen::Vector2cd(1.0, 0.0));
  for (int q : dec.idle)
    if (!idle_states.empty()) local[q] = idle_states.at(q);
  const std::uint64_t dim = std::uint64_t{1} << n;
  Vec psi(static_cast<Eigen::Index>(dim));
  for (std::uint64_t x = 0; x < dim; ++x) {
    cplx amp = 1.0;
    for (std::size_t b = 0; b < dec.blocks.size() && amp != 0.0; ++b) {
      const auto& qs = dec.blocks[b].qubits;
      std::uint64_t idx = 0;
      for (int q : qs) idx = (idx << 1) | static_cast<std::uint64_t>(bit_of(x, q, n));
      amp *= parts[b](static_cast<Eigen::Index>(idx));
    }
    for (int q : dec.idle) amp *= local[q](bit_of(x, q, n));
    psi(static_cast<Eigen::Index>(x)) = amp;
  }
  psi.normalize();
  return psi;
}

}  // namespace clh2d
