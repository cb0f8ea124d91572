#include "clh2d/structure.hpp"

#include "clh2d/algebra.hpp"
#include "clh2d/linalg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

namespace clh2d {

std::vector<bool> RoleMap::special_edges() const {
  std::vector<bool> out;
  for (const auto& r : qubits) out.push_back(r.special());
  return out;
}

bool RoleMap::any_special() const {
  return std::any_of(qubits.begin(), qubits.end(), [](const QubitRole& r) { return r.special(); });
}

RoleMap classify_roles(const CLHInstance& instance, double tol) {
  RoleMap out;
  const int n = instance.qubit_count();
  out.qubits.resize(n);
  out.nontrivial_stars.assign(n, 0);
  out.nontrivial_plaquettes.assign(n, 0);
  for (int q = 0; q < n; ++q) {
    for (int t : instance.terms_on_qubit(q)) {
      const auto& term = instance.term(t);
      if (acts_trivially(term, q, tol)) continue;
      (term.kind == TermKind::Star ? out.nontrivial_stars : out.nontrivial_plaquettes)[q]++;
    }
    out.qubits[q].boundary = out.nontrivial_plaquettes[q] <= 1;
    out.qubits[q].coboundary = out.nontrivial_stars[q] <= 1;
  }
  for (const auto& term : instance.terms()) {
    bool interior = true;
    for (int q : term.qubits) interior = interior && out.qubits[q].interior();
    out.interior_terms.push_back(interior);
  }
  return out;
}

Rotation vertex_rotation(const SurfaceComplex& complex, int v) {
  std::map<int, std::set<int>> next;
  for (const auto& k : complex.corners(v)) {
    next[k.edge_in].insert(k.edge_out);
    next[k.edge_out].insert(k.edge_in);
  }
  const auto& edges = complex.vertex_edges(v);
  int start = edges.front();
  for (int e : edges)
    if (next[e].size() <= 1) {
      start = e;
      break;
    }
  Rotation rot;
  std::set<int> seen{start};
  rot.edges.push_back(start);
  for (int cur = start;;) {
    int step = -1;
    for (int x : next[cur])
      if (!seen.count(x)) {
        step = x;
        break;
      }
    if (step < 0) break;
    seen.insert(step);
    rot.edges.push_back(step);
    cur = step;
  }
  rot.cyclic = complex.corners(v).size() == edges.size();
  return rot;
}

std::optional<TermCoefficients> scalar_pauli_form(const LocalTerm& term, double tol) {
  const int r = static_cast<int>(term.qubits.size());
  const Mat p = pauli_string(std::string(r, term.kind == TermKind::Star ? 'Z' : 'X'));
  const double d = static_cast<double>(term.matrix.rows());
  TermCoefficients c;
  c.identity = term.matrix.trace().real() / d;
  c.pauli = (p * term.matrix).trace().real() / d;
  const double rest = (term.matrix - c.identity * identity_on(r) - c.pauli * p).norm();
  if (rest > tol * std::max(1.0, term.matrix.norm())) return std::nullopt;
  return c;
}

namespace {

// Contiguous windows of a (possibly cyclic) sequence.
std::vector<std::vector<int>> windows(const std::vector<int>& seq, bool cyclic) {
  std::vector<std::vector<int>> out;
  const int n = static_cast<int>(seq.size());
  for (int len = 1; len <= n; ++len) {
    const int starts = cyclic ? (len == n ? 1 : n) : n - len + 1;
    for (int s = 0; s < starts; ++s) {
      std::vector<int> w;
      for (int i = 0; i < len; ++i) w.push_back(seq[(s + i) % n]);
      out.push_back(std::move(w));
    }
  }
  return out;
}

}  // namespace

EquivalenceReport verify_equivalence(const CLHInstance& calibrated, const RoleMap& roles, double tol,
                                     bool throw_on_violation) {
  EquivalenceReport report;
  const auto& c = calibrated.complex();
  for (int t = 0; t < calibrated.term_count(); ++t) {
    const auto& term = calibrated.term(t);
    const bool star = term.kind == TermKind::Star;
    std::vector<int> seq;
    bool cyclic = true;
    if (star) {
      const auto rot = vertex_rotation(c, term.site);
      seq = rot.edges;
      cyclic = rot.cyclic;
    } else {
      seq = c.face_edges(term.site);
    }
    for (const auto& w : windows(seq, cyclic)) {
      bool qualifies = true;
      for (std::size_t i = 0; i < w.size() && qualifies; ++i) {
        const auto& role = roles.qubits[w[i]];
        if (star ? role.coboundary : role.boundary) qualifies = false;
        if (i > 0) {
          const auto& prev = roles.qubits[w[i - 1]];
          if (star ? (role.boundary && prev.boundary) : (role.coboundary && prev.coboundary)) qualifies = false;
        }
      }
      if (!qualifies) continue;
      ++report.windows_checked;
      const auto alg = induced_algebra(term, w, tol);
      const Mat p = pauli_string(std::string(w.size(), star ? 'Z' : 'X'));
      if (alg.dimension() != 2 || !alg.contains(p, tol)) {
        std::string ids;
        for (int q : w) ids += (ids.empty() ? "" : ",") + c.edge_id(q);
        report.violations.push_back(calibrated.term_label(t) + " on {" + ids + "} induces a " +
                                    std::to_string(alg.dimension()) + "-dimensional algebra, expected <" +
                                    std::string(w.size(), star ? 'Z' : 'X') + ">");
      }
    }
  }
  const bool closed_case = !roles.any_special();
  for (int t = 0; t < calibrated.term_count(); ++t) {
    const auto form = scalar_pauli_form(calibrated.term(t), tol);
    report.coefficients.push_back(form);
    if (closed_case && (!form || std::abs(form->pauli) < tol))
      report.violations.push_back(calibrated.term_label(t) + " is not a non-scalar element of its Pauli line");
  }
  if (throw_on_violation && !report.ok())
    throw Error(ErrorCode::EquivalenceViolation, report.violations.front(), report.violations);
  return report;
}

std::string_view string_kind_name(StringKind kind) { return kind == StringKind::PathX ? "PathX" : "CopathZ"; }

namespace {

// L h L for a Pauli word L, in O(d^2): L|j> = phase_j |j ^ flip>.
Mat pauli_conjugate(const std::string& word, const Mat& h) {
  const int r = static_cast<int>(word.size());
  const Eigen::Index d = h.rows();
  Eigen::Index flip = 0;
  for (int i = 0; i < r; ++i)
    if (word[i] == 'X' || word[i] == 'Y') flip |= Eigen::Index{1} << (r - 1 - i);
  Vec phase(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    cplx ph = 1.0;
    for (int i = 0; i < r; ++i) {
      const bool bit = (j >> (r - 1 - i)) & 1;
      if (word[i] == 'Z' && bit) ph = -ph;
      if (word[i] == 'Y') ph *= bit ? cplx(0, -1) : cplx(0, 1);
    }
    phase(j) = ph;
  }
  Mat out(d, d);
  for (Eigen::Index b = 0; b < d; ++b)
    for (Eigen::Index a = 0; a < d; ++a) out(a, b) = std::conj(phase(a)) * phase(b) * h(a ^ flip, b ^ flip);
  return out;
}

std::string word_on(const StringOperator& op, const std::vector<int>& qubits) {
  std::string word;
  for (int q : qubits) {
    char letter = 'I';
    for (std::size_t i = 0; i < op.support.size(); ++i)
      if (op.support[i] == q) letter = op.letters[i];
    word += letter;
  }
  return word;
}

}  // namespace

Mat string_on(const StringOperator& op, const std::vector<int>& qubits) { return pauli_string(word_on(op, qubits)); }


Certification certify_string(const CLHInstance& calibrated, const StringOperator& op) {
  Certification cert;
  std::set<int> touched;
  for (int q : op.support)
    for (int t : calibrated.terms_on_qubit(q)) touched.insert(t);
  for (int t : touched) {
    const auto& term = calibrated.term(t);
    const std::string word = word_on(op, term.qubits);
    if (t == op.target) {
      const Mat h0 = term.matrix - (term.matrix.trace() / static_cast<double>(term.matrix.rows())) *
                                       Mat::Identity(term.matrix.rows(), term.matrix.cols());
      cert.target_nontrivial = h0.norm() > 1e-9;
      // ||{L, h}|| = ||L h L + h|| for a Pauli word L.
      cert.target_anticommutator = (pauli_conjugate(word, h0) + h0).norm();
    } else {
      cert.max_commutator = std::max(cert.max_commutator, (pauli_conjugate(word, term.matrix) - term.matrix).norm());
    }
  }
  return cert;
}

namespace {

// BFS tree from v1 = the other end of e0, never entering s0.
struct Search {
  int s0, e0, p0, v1;
  std::vector<int> dist, parent_edge;
};

Search grow(const SurfaceComplex& c, int s0, int e0, int p0) {
  Search s{s0, e0, p0, c.other_vertex(e0, s0), std::vector<int>(c.vertex_count(), -1),
           std::vector<int>(c.vertex_count(), -1)};
  s.dist[s.v1] = 0;
  std::deque<int> queue{s.v1};
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int e : c.vertex_edges(v)) {
      const int w = c.other_vertex(e, v);
      if (w == s0 || s.dist[w] >= 0) continue;
      s.dist[w] = s.dist[v] + 1;
      s.parent_edge[w] = e;
      queue.push_back(w);
    }
  }
  return s;
}

struct Candidate {
  int length, e0, p0, s0, special, a;
  int search;  // index into the searches
};

// s0 -e0- v1 ... a -special- b, or nothing when b already lies on the path.
std::optional<Path> materialize(const SurfaceComplex& c, const Search& s, const Candidate& cand) {
  const int b = c.other_vertex(cand.special, cand.a);
  std::vector<int> stars{cand.a}, edges;
  for (int v = cand.a; v != s.v1;) {
    edges.push_back(s.parent_edge[v]);
    v = c.other_vertex(s.parent_edge[v], v);
    if (v == b) return std::nullopt;
    stars.push_back(v);
  }
  if (cand.a == b) return std::nullopt;
  Path p;
  p.stars = {s.s0};
  p.edges = {s.e0};
  p.stars.insert(p.stars.end(), stars.rbegin(), stars.rend());
  p.edges.insert(p.edges.end(), edges.rbegin(), edges.rend());
  p.edges.push_back(cand.special);
  p.stars.push_back(b);
  return p;
}

}  // namespace

std::optional<StringOperator> access_check(const CLHInstance& calibrated, const RoleMap& roles, int term,
                                           const AccessOptions& options) {
  if (!roles.any_special()) throw Error(ErrorCode::NoSpecialEdge, "no boundary or coboundary qubits");
  const auto& c = calibrated.complex();
  const auto special = roles.special_edges();
  const auto& target = calibrated.term(term);
  const bool star = target.kind == TermKind::Star;

  std::vector<Search> searches;
  if (star) {
    const int s0 = target.site;
    for (int e0 : c.vertex_edges(s0))
      for (int p0 : c.edge_faces(e0)) searches.push_back(grow(c, s0, e0, p0));
  } else {
    const int p0 = target.site;
    for (int e0 : c.face_edges(p0))
      for (int s0 : c.edge_vertices(e0)) searches.push_back(grow(c, s0, e0, p0));
  }
  std::vector<int> special_list;
  for (int e = 0; e < c.edge_count(); ++e)
    if (special[e]) special_list.push_back(e);
  std::vector<Candidate> candidates;
  for (int i = 0; i < static_cast<int>(searches.size()); ++i) {
    const auto& s = searches[i];
    for (int es : special_list)
      for (int a : c.edge_vertices(es)) {
        const int b = c.other_vertex(es, a);
        if (es == s.e0 || a == s.s0 || b == s.s0 || s.dist[a] < 0) continue;
        candidates.push_back({s.dist[a] + 2, s.e0, s.p0, s.s0, es, a, i});
      }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.length, x.e0, x.p0, x.s0, x.special, x.a) < std::tie(y.length, y.e0, y.p0, y.s0, y.special, y.a);
  });

  int tried = 0;
  for (const auto& cand : candidates) {
    if (tried >= options.ribbon_budget) break;
    const auto path = materialize(c, searches[cand.search], cand);
    if (!path) continue;
    ++tried;
    RibbonOptions ro;
    ro.special = &special;
    ro.avoid_first_plaquette = cand.p0;
    Ribbon ribbon;
    try {
      ribbon = complete_path_to_ribbon(c, *path, ro);
    } catch (const Error&) {
      continue;
    }
    const int m = static_cast<int>(ribbon.edges.size()) - 1;
    if (m < 1 || !special[ribbon.edges[m]]) continue;
    const int qm1 = ribbon.edges[m - 1], qm = ribbon.edges[m];
    const int sm = ribbon.stars[m - 1], pm = ribbon.plaquettes[m - 1];
    StringOperator op;
    op.target = term;
    op.ribbon = ribbon.edges;
    op.terminal_star = sm;
    op.terminal_plaquette = pm;
    std::vector<int> support;
    if (star) {
      // Case a needs <X (x) X> from the terminal plaquette.
      if (two_qubit_structure(calibrated, calibrated.plaquette_term(pm), qm1, qm, options.algebra_tol).kind !=
          TwoQubitKind::XX)
        continue;
      op.kind = StringKind::PathX;
      support = ribbon_path(c, ribbon).edges;
    } else {
      if (two_qubit_structure(calibrated, calibrated.star_term(sm), qm1, qm, options.algebra_tol).kind !=
          TwoQubitKind::ZZ)
        continue;
      op.kind = StringKind::CopathZ;
      support = ribbon_copath(c, ribbon).edges;
    }
    for (int q : support) {
      if (roles.nontrivial_stars[q] + roles.nontrivial_plaquettes[q] == 0) continue;  // trivial qubit
      op.support.push_back(q);
      op.letters.push_back(star ? 'X' : 'Z');
    }
    if (certify_string(calibrated, op).passed(options.certify_tol)) return op;
  }
  return std::nullopt;
}

std::map<int, StringOperator> fixable_set(const CLHInstance& calibrated, const RoleMap& roles,
                                          const AccessOptions& options) {
  std::map<int, StringOperator> out;
  if (!roles.any_special()) return out;
  for (int t = 0; t < calibrated.term_count(); ++t) {
    if (!roles.interior_terms[t]) continue;
    if (auto op = access_check(calibrated, roles, t, options)) out.emplace(t, std::move(*op));
  }
  return out;
}

PuncturedHamiltonian puncture(const CLHInstance& calibrated, const std::map<int, StringOperator>& witnesses) {
  PuncturedHamiltonian out;
  out.base = calibrated;
  out.witnesses = witnesses;
  std::vector<Mat> mats;
  for (int t = 0; t < calibrated.term_count(); ++t) {
    const auto& term = calibrated.term(t);
    if (witnesses.count(t)) {
      out.removed.push_back(t);
      mats.push_back(identity_on(static_cast<int>(term.qubits.size())));
    } else {
      mats.push_back(term.matrix);
    }
  }
  out.punctured = calibrated.with_matrices(mats);
  return out;
}

}  // namespace clh2d
