#include "clh2d/synthesis.hpp"

#include "clh2d/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace clh2d {

namespace {

double min_eigenvalue(const Mat& h) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

// Greedy matching: repeatedly join the closest remaining pair (ties by site ids).
std::vector<std::pair<int, int>> nearest_pairs(const std::vector<int>& sites,
                                               const std::function<std::vector<int>(int)>& distances_from) {
  struct Candidate {
    int d, a, b;
  };
  std::vector<Candidate> all;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const auto dist = distances_from(sites[i]);
    for (std::size_t j = i + 1; j < sites.size(); ++j) {
      const int d = dist[sites[j]];
      if (d < 0) throw Error(ErrorCode::Unreachable, "excitations in different components");
      all.push_back({d, sites[i], sites[j]});
    }
  }
  std::sort(all.begin(), all.end(),
            [](const Candidate& x, const Candidate& y) { return std::tie(x.d, x.a, x.b) < std::tie(y.d, y.a, y.b); });
  std::vector<char> used;
  const int top = sites.empty() ? 0 : *std::max_element(sites.begin(), sites.end());
  used.assign(top + 1, 0);
  std::vector<std::pair<int, int>> out;
  for (const auto& c : all) {
    if (used[c.a] || used[c.b]) continue;
    used[c.a] = used[c.b] = 1;
    out.push_back({c.a, c.b});
  }
  return out;
}

// Adds or removes the cheapest site so the set to be paired has even size.
void balance(std::vector<int>& excited, const std::vector<double>& weight) {
  if (excited.size() % 2 == 0) return;
  int cheapest = 0;
  for (int i = 1; i < static_cast<int>(weight.size()); ++i)
    if (weight[i] < weight[cheapest]) cheapest = i;
  const auto it = std::find(excited.begin(), excited.end(), cheapest);
  if (it != excited.end())
    excited.erase(it);
  else
    excited.insert(std::upper_bound(excited.begin(), excited.end(), cheapest), cheapest);
}

StringOperator make_string(StringKind kind, const std::vector<int>& edges) {
  StringOperator op;
  op.kind = kind;
  op.support = edges;
  op.letters.assign(edges.size(), kind == StringKind::PathX ? 'X' : 'Z');
  op.ribbon = edges;
  return op;
}

void finish_report(SynthesisResult& r, double energy_tol) {
  r.report.final_values.clear();
  for (const auto& t : r.calibrated.terms()) r.report.final_values.push_back(term_value(r.state, t));
  r.report.final_energy = state_energy(r.state, r.calibrated);
  r.report.certified = std::abs(r.report.final_energy - r.report.reference_energy) <= energy_tol;
}

// Reduction, calibration and roles shared by the pipeline and the certificate.
std::optional<bool> partition_verdict(const CLHInstance& punctured, const SynthesisOptions& options) {
  if (!options.triangulation) return std::nullopt;
  return verify_two_local(punctured, build_superparticles(punctured, *options.triangulation));
}

double punctured_energy(const CLHInstance& punctured, const SynthesisOptions& options) {
  const bool pauli = is_pauli_form(punctured);
  if (options.method == GroundMethod::Stabilizer || (options.method == GroundMethod::Auto && pauli)) {
    Rng rng = Rng::derive(0, "certificate");
    return punctured_groundstate(punctured, GroundMethod::Stabilizer, Backend::Stabilizer, rng).energy;
  }
  return exact_ground_energy(punctured, options.reduction.exact);
}

double removed_minimum(const CLHInstance& calibrated, const std::map<int, StringOperator>& witnesses) {
  double total = 0.0;
  for (const auto& [t, op] : witnesses) total += min_eigenvalue(calibrated.term(t).matrix);
  return total;
}

// Removed terms sit in the punctured instance as identities, one unit each.
double full_energy(double punctured, double removed_min, std::size_t removed) {
  return punctured - static_cast<double>(removed) + removed_min;
}

}  // namespace

Prepared prepare(const CLHInstance& instance, const SynthesisOptions& options) {
  auto reduced = remove_all_classical(instance, options.reduction);
  const auto idle = witness_states(reduced.witness, instance.qubit_count());
  auto calibration = calibrate(reduced.instance, options.tol, idle);
  auto calibrated = apply_calibration(reduced.instance, calibration);
  auto roles = classify_roles(calibrated);
  return {std::move(reduced), std::move(calibration), std::move(calibrated), std::move(roles)};
}

std::string_view branch_name(Branch branch) { return branch == Branch::Closed ? "closed" : "punctured"; }

std::string_view ground_method_name(GroundMethod method) {
  switch (method) {
    case GroundMethod::Auto: return "auto";
    case GroundMethod::Exact: return "exact";
    case GroundMethod::Stabilizer: return "stabilizer";
  }
  return "?";
}

std::optional<PauliTerm> pauli_term_form(const LocalTerm& term, double tol) {
  PauliTerm out;
  std::string word;
  for (const auto& [w, c] : pauli_coefficients(term.matrix)) {
    if (std::abs(c) < tol) continue;
    if (std::abs(c.imag()) > tol) return std::nullopt;
    if (w.find_first_not_of('I') == std::string::npos) {
      out.identity = c.real();
      continue;
    }
    if (!word.empty()) return std::nullopt;
    word = w;
    out.coefficient = c.real();
  }
  for (std::size_t i = 0; i < word.size(); ++i)
    if (word[i] != 'I') {
      out.word.qubits.push_back(term.qubits[i]);
      out.word.letters += word[i];
    }
  return out;
}

bool is_pauli_form(const CLHInstance& instance, double tol) {
  for (const auto& t : instance.terms())
    if (!pauli_term_form(t, tol)) return false;
  return true;
}

int term_value(const QuantumState& state, const LocalTerm& term, double tol) {
  const double p = state.probability_plus(satisfaction_observable(term.matrix), term.qubits);
  if (p >= 1.0 - tol) return 1;
  if (p <= tol) return -1;
  throw Error(ErrorCode::NotInvariant, "term outcome is not deterministic",
              {"term=" + std::to_string(term.site), "p_plus=" + std::to_string(p)});
}

double defected_ground_energy(const CLHInstance& calibrated, double tol) {
  if (!calibrated.complex().is_closed()) throw Error(ErrorCode::NotClosed, "defected energy needs a closed complex");
  double energy = 0.0;
  int defected[2] = {0, 0};
  double cheapest[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (int t = 0; t < calibrated.term_count(); ++t) {
    const auto k = scalar_pauli_form(calibrated.term(t), tol);
    if (!k) throw Error(ErrorCode::NotDefectedForm, "term is not u I + u' P", {"term=" + calibrated.term_label(t)});
    const int kind = calibrated.term(t).kind == TermKind::Star ? 0 : 1;
    energy += k->identity - std::abs(k->pauli);
    // The products of all stars and of all plaquettes are the identity, so an
    // odd number of positive coefficients leaves one term unsatisfied.
    if (k->pauli > tol) ++defected[kind];
    cheapest[kind] = std::min(cheapest[kind], std::abs(k->pauli));
  }
  for (int kind = 0; kind < 2; ++kind)
    if (defected[kind] % 2 == 1) energy += 2.0 * cheapest[kind];
  return energy;
}

SynthesisResult toric_groundstate(const CLHInstance& calibrated, std::uint64_t seed, const SynthesisOptions& options) {
  const auto& c = calibrated.complex();
  if (!c.is_closed()) throw Error(ErrorCode::NotClosed, "closed branch needs a closed complex");
  const double reference = defected_ground_energy(calibrated);
  const int n = calibrated.qubit_count();
  const Backend backend = options.backend.value_or(Backend::Stabilizer);
  SynthesisResult r{QuantumState::zero(n, backend, options.max_sv_qubits), {}, calibrated, {}, {}};
  r.calibration.unitaries.assign(n, Mat2::Identity());
  r.report.branch = Branch::Closed;
  r.report.backend = backend;
  r.report.oracle = "product-state";
  r.report.reference_energy = reference;
  r.report.reference_source = "defected-energy formula";

  // Stars: |0...0> has Z^(x) = +1, which satisfies u' <= 0.
  std::vector<double> star_weight(c.vertex_count());
  std::vector<int> excited_stars;
  for (int v = 0; v < c.vertex_count(); ++v) {
    const auto k = *scalar_pauli_form(calibrated.term(calibrated.star_term(v)));
    star_weight[v] = std::abs(k.pauli);
    if (k.pauli > 1e-8) excited_stars.push_back(v);
  }
  balance(excited_stars, star_weight);
  for (auto [a, b] : nearest_pairs(excited_stars, [&](int v) { return vertex_distances(c, v); })) {
    auto op = make_string(StringKind::PathX, find_path(c, a, b).edges);
    op.target = calibrated.star_term(a);
    apply_string(r.state, op);
    r.report.corrections.push_back(std::move(op));
  }

  Rng rng = Rng::derive(seed, "closed");
  std::vector<double> plaquette_weight(c.face_count());
  std::vector<int> excited;
  int positive = 0;
  bool all_pauli = true;
  for (int f = 0; f < c.face_count(); ++f) {
    const auto& h = calibrated.term(calibrated.plaquette_term(f));
    const auto k = *scalar_pauli_form(h);
    plaquette_weight[f] = std::abs(k.pauli);
    if (k.pauli > 1e-8) ++positive;
    if (std::abs(k.pauli) <= 1e-8) all_pauli = false;
    const int value = r.state.measure(satisfaction_observable(h.matrix), h.qubits, rng);
    r.report.record.push_back({calibrated.plaquette_term(f), value});
    if (value < 0) excited.push_back(f);
  }
  // The X^(x) outcomes multiply to +1, which fixes the excitation parity.
  if (all_pauli && static_cast<int>(excited.size() % 2) != positive % 2)
    throw Error(ErrorCode::OddExcitations, "plaquette excitation parity contradicts the product constraint",
                {"excitations=" + std::to_string(excited.size())});
  balance(excited, plaquette_weight);
  for (auto [a, b] : nearest_pairs(excited, [&](int f) { return face_distances(c, f); })) {
    auto op = make_string(StringKind::CopathZ, find_copath(c, a, b).edges);
    op.target = calibrated.plaquette_term(a);
    apply_string(r.state, op);
    r.report.corrections.push_back(std::move(op));
  }
  finish_report(r, options.energy_tol);
  return r;
}

GroundState punctured_groundstate(const CLHInstance& punctured, GroundMethod method, Backend backend, Rng& rng,
                                  int max_sv_qubits) {
  const int n = punctured.qubit_count();
  if (method == GroundMethod::Auto) method = is_pauli_form(punctured) ? GroundMethod::Stabilizer : GroundMethod::Exact;
  if (method == GroundMethod::Exact) {
    if (backend == Backend::Stabilizer)
      throw Error(ErrorCode::MethodUnsupported, "the exact oracle produces a dense state");
    if (n > max_sv_qubits)
      throw Error(ErrorCode::TooLarge, "exact oracle over the qubit cap",
                  {"qubits=" + std::to_string(n), "max_sv_qubits=" + std::to_string(max_sv_qubits)});
    const Vec psi = exact_ground_state(punctured, rng.next_u64());
    GroundState g{QuantumState::from_amplitudes(psi), "exact-eigensolver", exact_ground_energy(punctured)};
    if (std::abs(energy(punctured, psi) - g.energy) > 1e-8)
      throw Error(ErrorCode::NotInvariant, "eigensolver state misses the ground energy");
    return g;
  }

  // Stabilizer completion: measure each term's Pauli word, heaviest first, and
  // steer it to the minimizing sign. Rows holding a term are locked; a wrong
  // sign is repaired by the destabilizer of that row, which commutes with every
  // other row. A word already fixed by locked rows closes a circuit of terms;
  // when such a circuit is violated, dropping its lightest member (the word
  // itself) is optimal as long as circuits are disjoint.
  struct Item {
    int term;
    PauliTerm form;
  };
  std::vector<Item> items;
  for (int j = 0; j < punctured.term_count(); ++j) {
    auto form = pauli_term_form(punctured.term(j));
    if (!form) throw Error(ErrorCode::MethodUnsupported, "term is not a Pauli word", {"term=" + punctured.term_label(j)});
    items.push_back({j, std::move(*form)});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return std::abs(a.form.coefficient) > std::abs(b.form.coefficient);
  });

  Tableau t(n);
  std::vector<bool> locked(n, false);
  std::vector<int> term_of_row(n, -1), circuit_of_term(punctured.term_count(), -1);
  int circuits = 0;
  bool violated = false, overlapping = false;
  double e = 0.0;
  for (const auto& [j, form] : items) {
    if (std::abs(form.coefficient) < 1e-9 || form.word.qubits.empty()) {
      e += form.identity + form.coefficient;
      continue;
    }
    const int want = form.coefficient > 0 ? -1 : 1;
    const int outcome = rng.uniform() < t.probability_plus(form.word) ? 1 : -1;
    int row = t.project(form.word, outcome);
    if (row < 0) {
      const auto free_row = t.isolate(form.word, locked);
      if (!free_row) {
        const int id = circuits++;
        for (int i : t.expansion(form.word)) {
          int& owner = circuit_of_term[term_of_row[i]];
          if (owner >= 0) overlapping = true;
          owner = id;
        }
        circuit_of_term[j] = id;
        if (outcome != want) violated = true;
        e += form.identity + form.coefficient * outcome;
        continue;
      }
      row = *free_row;
    }
    locked[row] = true;
    term_of_row[row] = j;
    if (outcome != want) t.flip(row);
    e += form.identity + form.coefficient * want;
  }
  if (violated && overlapping)
    throw Error(ErrorCode::MethodUnsupported, "frustrated term signs on overlapping circuits");
  return {QuantumState::from_tableau(t, backend, max_sv_qubits), "stabilizer-completion", e};
}

SynthesisResult full_pipeline(const CLHInstance& instance, std::uint64_t seed, const SynthesisOptions& options) {
  auto prep = prepare(instance, options);
  verify_equivalence(prep.calibrated, prep.roles);
  if (!prep.roles.any_special()) {
    auto r = toric_groundstate(prep.calibrated, seed, options);
    r.calibration = std::move(prep.calibration);
    r.witness = std::move(prep.reduced.witness);
    return r;
  }

  const auto& ci = prep.calibrated;
  const auto witnesses = fixable_set(ci, prep.roles, options.access);
  const auto p = puncture(ci, witnesses);
  const auto two_local = partition_verdict(p.punctured, options);
  const Backend backend = options.backend.value_or(is_pauli_form(ci) ? Backend::Stabilizer : Backend::Statevector);

  Rng ground = Rng::derive(seed, "ground");
  auto gs = punctured_groundstate(p.punctured, options.method, backend, ground, options.max_sv_qubits);
  SynthesisResult r{std::move(gs.state), {}, ci, std::move(prep.calibration), std::move(prep.reduced.witness)};
  r.report.branch = Branch::Punctured;
  r.report.backend = backend;
  r.report.oracle = gs.oracle;
  r.report.two_local = two_local;
  r.report.reference_energy = full_energy(gs.energy, removed_minimum(ci, witnesses), witnesses.size());
  r.report.reference_source = "punctured ground energy + removed minima";

  // Measure every removed term and fix the unsatisfied ones with their strings.
  Rng measure = Rng::derive(seed, "measure");
  for (int t : p.removed) {
    const auto& h = ci.term(t);
    const int value = r.state.measure(satisfaction_observable(h.matrix), h.qubits, measure);
    r.report.record.push_back({t, value});
    if (value < 0) {
      const auto& op = witnesses.at(t);
      apply_string(r.state, op);
      r.report.corrections.push_back(op);
    }
  }
  finish_report(r, options.energy_tol);
  return r;
}

bool CertificateVerdict::accepted() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

NpCertificate np_certificate(const CLHInstance& instance, const SynthesisOptions& options) {
  auto prep = prepare(instance, options);
  verify_equivalence(prep.calibrated, prep.roles);
  NpCertificate cert;
  cert.witness = prep.reduced.witness;
  cert.calibration = prep.calibration;
  if (!prep.roles.any_special()) {
    cert.branch = Branch::Closed;
    cert.ground_energy = defected_ground_energy(prep.calibrated);
    return cert;
  }
  cert.branch = Branch::Punctured;
  cert.witnesses = fixable_set(prep.calibrated, prep.roles, options.access);
  const auto p = puncture(prep.calibrated, cert.witnesses);
  cert.two_local = partition_verdict(p.punctured, options);
  const bool stabilizer = options.method == GroundMethod::Stabilizer ||
                          (options.method == GroundMethod::Auto && is_pauli_form(p.punctured));
  cert.punctured_oracle = stabilizer ? "stabilizer-completion" : "exact-eigensolver";
  cert.punctured_ground_energy = punctured_energy(p.punctured, options);
  cert.removed_minimum = removed_minimum(prep.calibrated, cert.witnesses);
  cert.ground_energy = full_energy(cert.punctured_ground_energy, cert.removed_minimum, cert.witnesses.size());
  return cert;
}

CertificateVerdict verify_certificate(const CLHInstance& instance, const NpCertificate& cert,
                                      const SynthesisOptions& options) {
  CertificateVerdict v;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    try {
      const auto detail = body();
      v.checks.push_back({name, detail.empty(), detail});
    } catch (const Error& e) {
      v.checks.push_back({name, false, std::string(error_name(e.code())) + ": " + e.what()});
    }
    return v.checks.back().passed;
  };
  const auto near = [](double a, double b) { return std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b)); };

  std::optional<CLHInstance> reduced, ci;
  std::optional<RoleMap> roles;
  if (!check("reduction", [&] {
        reduced = replay_witness(instance, cert.witness, options.tol);
        return std::string();
      }))
    return v;
  if (!check("calibration", [&]() -> std::string {
        if (static_cast<int>(cert.calibration.unitaries.size()) != instance.qubit_count()) return "wrong unitary count";
        for (const auto& u : cert.calibration.unitaries)
          if (!is_unitary(u, 1e-9)) return "calibration is not unitary";
        ci = apply_calibration(*reduced, cert.calibration);
        roles = classify_roles(*ci);
        const auto rep = verify_equivalence(*ci, *roles, 1e-8, false);
        return rep.ok() ? std::string() : rep.violations.front();
      }))
    return v;
  check("branch", [&]() -> std::string {
    const bool punctured = roles->any_special();
    return punctured == (cert.branch == Branch::Punctured) ? "" : "branch does not match the qubit roles";
  });
  if (cert.branch == Branch::Closed) {
    check("defected energy", [&]() -> std::string {
      return near(defected_ground_energy(*ci), cert.ground_energy) ? "" : "ground energy differs from the formula";
    });
    return v;
  }
  check("string witnesses", [&]() -> std::string {
    for (const auto& [t, op] : cert.witnesses) {
      if (op.target != t) return "witness targets another term";
      if (!roles->interior_terms.at(t)) return "witness for a non-interior term " + ci->term_label(t);
      if (!certify_string(*ci, op).passed(options.access.certify_tol)) return "string fails on " + ci->term_label(t);
    }
    return "";
  });
  const auto p = puncture(*ci, cert.witnesses);
  if (cert.two_local || options.triangulation)
    check("two-locality", [&]() -> std::string {
      const auto verdict = partition_verdict(p.punctured, options);
      if (!verdict) return "no triangulation to check against";
      if (!*verdict) return "a term meets three blocks";
      return cert.two_local == verdict ? "" : "recorded verdict differs";
    });
  check("punctured energy", [&]() -> std::string {
    return near(punctured_energy(p.punctured, options), cert.punctured_ground_energy) ? "" : "punctured energy differs";
  });
  check("ground energy", [&]() -> std::string {
    const double removed = removed_minimum(*ci, cert.witnesses);
    if (!near(removed, cert.removed_minimum)) return "removed minima differ";
    const double total = full_energy(cert.punctured_ground_energy, removed, cert.witnesses.size());
    return near(total, cert.ground_energy) ? "" : "energies do not add up";
  });
  return v;
}

}  // namespace clh2d
