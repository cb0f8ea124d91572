#include "clh2d/io.hpp"
#include "clh2d/linalg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using namespace clh2d;
using io::Json;

namespace {

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;

struct RunConfig {
  std::string command;
  std::string input;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::string backend = "auto";
  int max_sv_qubits = 20;
  int ribbon_budget = 8;
  std::optional<double> tol;

  // partition
  std::string triangulation;
  std::string grid;
  bool periodic = false;
  int k = 4;
  int block = 7;
  // certify / prepare
  std::string certificate;
  std::string state;
  // gen
  std::string family;
  std::string size = "3x3";
  bool closed = false;
  bool scramble = false;
  bool defects = false;
  std::vector<std::string> identity_stars;
  int ring = 4;
};

std::pair<int, int> parse_size(const std::string& s) {
  const auto x = s.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t a = 0, b = 0;
    const int n = std::stoi(s.substr(0, x), &a);
    const int m = std::stoi(s.substr(x + 1), &b);
    if (a != x || b != s.size() - x - 1 || n < 1 || m < 1) throw std::invalid_argument(s);
    return {n, m};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "size must look like NxM", {"size=" + s});
  }
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["input"] = c.input;
  j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
  j["backend"] = c.backend;
  j["max_sv_qubits"] = c.max_sv_qubits;
  j["ribbon_budget"] = c.ribbon_budget;
  j["tol"] = c.tol ? Json(*c.tol) : Json(nullptr);
  if (c.command == "partition") {
    j["triangulation"] = c.triangulation;
    j["grid"] = c.grid;
    j["periodic"] = c.periodic;
    j["k"] = c.k;
    j["block"] = c.block;
  }
  if (c.command == "certify") j["certificate"] = c.certificate;
  if (c.command == "gen") {
    j["family"] = c.family;
    j["size"] = c.size;
    j["closed"] = c.closed;
    j["scramble"] = c.scramble;
    j["defects"] = c.defects;
    j["identity_stars"] = c.identity_stars;
    j["ring"] = c.ring;
  }
  return j;
}

Json artifact(const RunConfig& c, Json result) {
  Json j;
  j["tool"] = io::kToolVersion;
  j["config"] = config_json(c);
  j["result"] = std::move(result);
  return j;
}

void emit(const RunConfig& c, const Json& j) {
  if (c.output.empty()) {
    std::cout << io::dump(j);
  } else {
    io::save(c.output, j);
  }
}

std::uint64_t require_seed(const RunConfig& c) {
  if (!c.seed) throw Error(ErrorCode::InvalidArgument, "command '" + c.command + "' measures and needs --seed");
  return *c.seed;
}

// Artifacts wrap their payload in "result"; bare files are accepted too.
const Json& payload(const Json& j, const char* key) {
  const Json* p = &j;
  if (auto it = p->find("result"); it != p->end()) p = &*it;
  if (auto it = p->find(key); it != p->end()) p = &*it;
  return *p;
}

Tolerances tolerances(const RunConfig& c) {
  Tolerances t;
  if (c.tol) t.commute = t.certify = *c.tol;
  return t;
}

SynthesisOptions options(const RunConfig& c) {
  SynthesisOptions o;
  if (c.backend == "stabilizer") o.backend = Backend::Stabilizer;
  if (c.backend == "statevector") o.backend = Backend::Statevector;
  o.max_sv_qubits = c.max_sv_qubits;
  o.access.ribbon_budget = c.ribbon_budget;
  o.tol = tolerances(c);
  o.reduction.tol = o.tol;
  if (const char* cache = std::getenv("CLH2D_CACHE")) o.reduction.exact.cache_dir = cache;
  return o;
}

CLHInstance load_instance(const RunConfig& c) {
  if (c.input.empty()) throw Error(ErrorCode::InvalidArgument, "--in is required");
  return io::instance_from_json(io::load(c.input), tolerances(c));
}

Json commutation_json(const CLHInstance& inst, double tol) {
  const auto rep = check_commutation(inst, tol);
  Json j;
  j["pairs_checked"] = rep.pairs_checked;
  j["max_residual"] = rep.max_residual;
  return j;
}

Json summary(const CLHInstance& inst) {
  const auto& c = inst.complex();
  Json j;
  j["vertices"] = c.vertex_count();
  j["edges"] = c.edge_count();
  j["faces"] = c.face_count();
  j["qubits"] = inst.qubit_count();
  j["terms"] = inst.term_count();
  j["locality"] = inst.locality();
  j["closed"] = c.is_closed();
  j["warnings"] = inst.warnings();
  return j;
}

int cmd_validate(const RunConfig& c) {
  const auto inst = load_instance(c);
  Json r = summary(inst);
  r["commutation"] = commutation_json(inst, tolerances(c).commute);
  emit(c, artifact(c, r));
  return 0;
}

int cmd_analyze(const RunConfig& c) {
  const auto inst = load_instance(c);
  const auto tol = tolerances(c);
  Json r = summary(inst);
  r["commutation"] = commutation_json(inst, tol.commute);
  r["pauli_form"] = is_pauli_form(inst);
  const auto roles = classify_roles(inst);
  const auto actions = qubit_actions(inst);
  const Json edges = io::complex_to_json(inst.complex())["edges"];
  Json qubits = Json::array();
  for (int q = 0; q < inst.qubit_count(); ++q) {
    Json e;
    e["qubit"] = edges[q][0];
    e["nontrivial_stars"] = actions[q].nontrivial_stars();
    e["nontrivial_plaquettes"] = actions[q].nontrivial_plaquettes();
    e["boundary"] = roles.qubits[q].boundary;
    e["coboundary"] = roles.qubits[q].coboundary;
    qubits.push_back(e);
  }
  r["qubits_detail"] = qubits;
  if (const auto cq = find_classical_qubit(inst, tol)) {
    r["classical_qubit"] = edges[cq->qubit][0];
  } else {
    r["classical_qubit"] = nullptr;
  }
  emit(c, artifact(c, r));
  return 0;
}

int cmd_reduce(const RunConfig& c) {
  const auto inst = load_instance(c);
  const auto o = options(c);
  const auto red = remove_all_classical(inst, o.reduction);
  Json r;
  r["witness"] = io::witness_to_json(red.witness, inst.complex());
  r["branch_energies"] = red.branch_energies;
  r["instance"] = io::instance_to_json(red.instance);
  emit(c, artifact(c, r));
  return 0;
}

Json roles_json(const CLHInstance& inst, const RoleMap& roles) {
  Json boundary = Json::array(), coboundary = Json::array();
  const auto edges = io::complex_to_json(inst.complex())["edges"];
  for (int q = 0; q < inst.qubit_count(); ++q) {
    if (roles.qubits[q].boundary) boundary.push_back(edges[q][0]);
    if (roles.qubits[q].coboundary) coboundary.push_back(edges[q][0]);
  }
  return Json{{"boundary", boundary}, {"coboundary", coboundary}};
}

int cmd_equivalence(const RunConfig& c) {
  const auto inst = load_instance(c);
  const auto o = options(c);
  const auto p = prepare(inst, o);
  const auto rep = verify_equivalence(p.calibrated, p.roles, 1e-8, false);
  Json r;
  r["witness"] = io::witness_to_json(p.reduced.witness, inst.complex());
  r["calibration"] = io::calibration_to_json(p.calibration, inst.complex());
  r["roles"] = roles_json(p.calibrated, p.roles);
  r["equivalence"] = io::equivalence_to_json(rep, p.calibrated);
  emit(c, artifact(c, r));
  return rep.ok() ? 0 : kExitError;
}

PuncturedHamiltonian punctured_of(const CLHInstance& inst, const SynthesisOptions& o) {
  const auto p = prepare(inst, o);
  verify_equivalence(p.calibrated, p.roles);
  if (!p.roles.any_special())
    throw Error(ErrorCode::NoSpecialEdge, "closed instance: no boundary or coboundary qubit to puncture towards");
  return puncture(p.calibrated, fixable_set(p.calibrated, p.roles, o.access));
}

int cmd_puncture(const RunConfig& c) {
  const auto inst = load_instance(c);
  const auto p = punctured_of(inst, options(c));
  emit(c, artifact(c, io::punctured_to_json(p)));
  return 0;
}

int cmd_partition(const RunConfig& c) {
  const auto inst = load_instance(c);
  const auto& complex = inst.complex();
  Triangulation t;
  if (!c.triangulation.empty()) {
    t = io::triangulation_from_json(payload(io::load(c.triangulation), "triangulation"), complex);
  } else if (!c.grid.empty()) {
    const auto [n, m] = parse_size(c.grid);
    t = grid_triangulation(complex, n, m, c.periodic, {.k = c.k, .c = c.block, .r = -1});
  } else {
    throw Error(ErrorCode::InvalidArgument, "partition needs --triangulation or --grid");
  }
  const auto p = punctured_of(inst, options(c));
  const auto qe = verify_quasi_euclidean(complex, t, t.r, t.R, t.D);
  const auto part = build_superparticles(p.punctured, t);
  const bool two_local = verify_two_local(p.punctured, part);
  Json r;
  r["quasi_euclidean"] = Json{{"ok", qe.ok()}, {"violations", qe.violations}, {"max_diameter", qe.max_diameter},
                              {"degree", qe.degree}};
  r["removed"] = static_cast<int>(p.removed.size());
  r["partition"] = io::partition_to_json(part, p.punctured);
  r["within_bound"] = part.max_block_size() <= part.size_bound;
  r["two_local"] = two_local;
  emit(c, artifact(c, r));
  return qe.ok() && two_local ? 0 : kExitError;
}

int cmd_prepare(const RunConfig& c) {
  const auto inst = load_instance(c);
  const auto seed = require_seed(c);
  const auto res = full_pipeline(inst, seed, options(c));
  Json r;
  r["report"] = io::report_to_json(res.report, res.calibrated);
  r["calibration"] = io::calibration_to_json(res.calibration, inst.complex());
  if (res.state.backend() == Backend::Statevector) {
    std::string file = c.state;
    if (file.empty() && !c.output.empty()) file = c.output + ".amp";
    if (!file.empty())
      io::write_amplitudes(file, to_original_frame(res.state.amplitudes(), res.calibration), inst.complex());
    r["state"] = io::state_to_json(res.state, inst.complex(), file);
    r["state"]["frame"] = "original";
  } else {
    r["state"] = io::state_to_json(res.state, inst.complex());
    r["state"]["frame"] = "calibrated";
  }
  emit(c, artifact(c, r));
  return 0;
}

int cmd_certify(const RunConfig& c) {
  const auto inst = load_instance(c);
  const auto o = options(c);
  const NpCertificate cert = c.certificate.empty()
                                 ? np_certificate(inst, o)
                                 : io::certificate_from_json(payload(io::load(c.certificate), "certificate"), inst);
  const auto verdict = verify_certificate(inst, cert, o);
  Json r;
  r["certificate"] = io::certificate_to_json(cert, inst);
  r["verdict"] = io::verdict_to_json(verdict);
  emit(c, artifact(c, r));
  return verdict.accepted() ? 0 : kExitRejected;
}

// |u| + |u'| <= 1 with random signs, magnitudes bounded away from zero.
DefectCoefficients random_defects(const SurfaceComplex& complex, Rng& rng) {
  auto d = DefectCoefficients::toric(complex);
  auto draw = [&](std::vector<double>& id, std::vector<double>& pauli) {
    for (std::size_t i = 0; i < id.size(); ++i) {
      const double mag = 0.1 + 0.5 * rng.uniform();
      pauli[i] = rng.uniform() < 0.5 ? -mag : mag;
      id[i] = (1.0 - mag) * (2.0 * rng.uniform() - 1.0);
    }
  };
  draw(d.u, d.u_prime);
  draw(d.v, d.v_prime);
  return d;
}

int cmd_gen(const RunConfig& c) {
  SurfaceComplex complex;
  int n = 0, m = 0;
  if (c.family == "ring") {
    complex = ring_complex(c.ring);
  } else if (c.family == "toric" || c.family == "planar" || c.family == "triangulation") {
    std::tie(n, m) = parse_size(c.size);
    complex = c.family == "toric" && c.closed ? torus_grid(n, m) : planar_grid(n, m);
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + c.family + "'",
                {"families=toric,planar,ring,triangulation"});
  }
  if (c.family == "triangulation") {
    const auto t = grid_triangulation(complex, n, m, false, {.k = c.k, .c = c.block, .r = -1});
    emit(c, artifact(c, Json{{"triangulation", io::triangulation_to_json(t, complex)}}));
    return 0;
  }
  std::optional<DefectCoefficients> defects;
  if (c.defects) {
    Rng rng = Rng::derive(require_seed(c), "gen:defects");
    defects = random_defects(complex, rng);
  }
  std::vector<int> identity;
  for (const auto& id : c.identity_stars) identity.push_back(complex.vertex_index(id));
  CLHInstance inst = surface_code_instance(complex, defects ? &*defects : nullptr, identity);
  if (c.scramble) inst = scramble(inst, mix_label(require_seed(c), "gen:scramble"));
  Json j = io::instance_to_json(inst);
  j["tool"] = io::kToolVersion;
  j["config"] = config_json(c);
  emit(c, j);
  return 0;
}

void common_flags(CLI::App* sub, RunConfig& c, bool needs_input = true) {
  if (needs_input) sub->add_option("--in", c.input, "Input instance file")->required();
  sub->add_option("--out", c.output, "Output file (stdout when omitted)");
  sub->add_option("--seed", c.seed, "Root seed");
  sub->add_option("--backend", c.backend, "State backend")
      ->check(CLI::IsMember({"auto", "stabilizer", "statevector"}));
  sub->add_option("--max-sv-qubits", c.max_sv_qubits, "Statevector qubit cap")->check(CLI::PositiveNumber);
  sub->add_option("--ribbon-budget", c.ribbon_budget, "Ribbon candidates per term")->check(CLI::PositiveNumber);
  sub->add_option("--tol", c.tol, "Commutation and certification tolerance")->check(CLI::PositiveNumber);
}

int usage_error(const std::string& message) {
  std::cerr << io::dump(Json{{"error", Json{{"code", "Usage"}, {"message", message}, {"details", Json::array()}}}});
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Commuting local Hamiltonians on 2D surfaces: analysis and groundstate synthesis"};
  app.set_version_flag("--version", std::string(io::kToolVersion));
  app.require_subcommand(1);
  RunConfig c;

  common_flags(app.add_subcommand("validate", "Check incidences, dimensions and commutation"), c);
  common_flags(app.add_subcommand("analyze", "Qubit actions, roles and classical qubits"), c);
  common_flags(app.add_subcommand("reduce", "Remove classical qubits"), c);
  common_flags(app.add_subcommand("equivalence", "Calibrate and check the toric-code structure"), c);
  common_flags(app.add_subcommand("puncture", "Fixable set and punctured Hamiltonian"), c);

  auto* partition = app.add_subcommand("partition", "Super-particle partition of the punctured Hamiltonian");
  common_flags(partition, c);
  partition->add_option("--triangulation", c.triangulation, "Triangulation file");
  partition->add_option("--grid", c.grid, "Grid triangulation on an NxM grid complex");
  partition->add_flag("--periodic", c.periodic, "Grid complex is a torus");
  partition->add_option("--k", c.k, "Maximal term size")->check(CLI::PositiveNumber);
  partition->add_option("--block", c.block, "Block side in units of k")->check(CLI::PositiveNumber);

  auto* prep = app.add_subcommand("prepare", "Synthesize a groundstate");
  common_flags(prep, c);
  prep->add_option("--state", c.state, "Amplitude file for statevector runs (default: <out>.amp)");

  auto* certify = app.add_subcommand("certify", "Build or check a ground-energy certificate");
  common_flags(certify, c);
  certify->add_option("--certificate", c.certificate, "Certificate to verify instead of building one");

  auto* gen = app.add_subcommand("gen", "Generate instances and triangulations");
  common_flags(gen, c, false);
  gen->add_option("family", c.family, "toric | planar | ring | triangulation")->required();
  gen->add_option("--size", c.size, "Grid size NxM");
  gen->add_flag("--closed", c.closed, "Periodic (torus) grid for toric");
  gen->add_flag("--scramble", c.scramble, "Conjugate by Haar-random single-qubit unitaries");
  gen->add_flag("--defects", c.defects, "Random u I + u' P coefficients");
  gen->add_option("--identity-stars", c.identity_stars, "Vertex ids whose star is the identity");
  gen->add_option("--ring", c.ring, "Central polygon size for the ring family")->check(CLI::Range(3, 64));
  gen->add_option("--k", c.k, "Maximal term size (triangulation)")->check(CLI::PositiveNumber);
  gen->add_option("--block", c.block, "Block side in units of k (triangulation)")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    if (c.command == "validate") return cmd_validate(c);
    if (c.command == "analyze") return cmd_analyze(c);
    if (c.command == "reduce") return cmd_reduce(c);
    if (c.command == "equivalence") return cmd_equivalence(c);
    if (c.command == "puncture") return cmd_puncture(c);
    if (c.command == "partition") return cmd_partition(c);
    if (c.command == "prepare") return cmd_prepare(c);
    if (c.command == "certify") return cmd_certify(c);
    if (c.command == "gen") return cmd_gen(c);
  } catch (const Error& e) {
    std::cerr << io::dump(io::error_to_json(e));
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << io::dump(Json{{"error", Json{{"code", "Internal"}, {"message", e.what()}, {"details", Json::array()}}}});
    return kExitError;
  }
  return usage_error("unknown command " + c.command);
}
