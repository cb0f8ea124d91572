#include "clh2d/io.hpp"

#include "clh2d/linalg.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace clh2d::io {
namespace {

constexpr char kMagic[8] = {'C', 'L', 'H', '2', 'D', 'S', 'V', '1'};

[[noreturn]] void malformed(const std::string& what, std::vector<std::string> details = {}) {
  throw Error(ErrorCode::ParseError, what, std::move(details));
}

// Runs a reader, turning JSON type and key errors into ParseError.
template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    malformed(std::string("malformed ") + what + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) malformed("expected an object");
  auto it = j.find(key);
  if (it == j.end()) malformed(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) malformed(std::string("field '") + key + "' is not an array");
  return a;
}

Json id_value(const std::string& id, bool numeric) {
  return numeric ? Json(std::stoll(id)) : Json(id);
}

std::string read_id(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  malformed("ids must be strings or integers", {"got=" + j.dump()});
}

template <class Lookup>
int index_of(Lookup&& lookup, const Json& j) {
  const std::string id = read_id(j);
  try {
    return lookup(id);
  } catch (const Error& e) {
    malformed(e.what());
  }
}

int vertex_of(const SurfaceComplex& c, const Json& j) {
  return index_of([&](const std::string& id) { return c.vertex_index(id); }, j);
}
int edge_of(const SurfaceComplex& c, const Json& j) {
  return index_of([&](const std::string& id) { return c.edge_index(id); }, j);
}
int face_of(const SurfaceComplex& c, const Json& j) {
  return index_of([&](const std::string& id) { return c.face_index(id); }, j);
}

Json vertex_json(const SurfaceComplex& c, int v) { return id_value(c.vertex_id(v), c.numeric_ids()); }
Json edge_json(const SurfaceComplex& c, int e) { return id_value(c.edge_id(e), c.numeric_ids()); }
Json face_json(const SurfaceComplex& c, int f) { return id_value(c.face_id(f), c.numeric_ids()); }

Json edges_json(const SurfaceComplex& c, const std::vector<int>& edges) {
  Json out = Json::array();
  for (int e : edges) out.push_back(edge_json(c, e));
  return out;
}

std::vector<int> edges_from(const SurfaceComplex& c, const Json& j) {
  if (!j.is_array()) malformed("expected an edge list");
  std::vector<int> out;
  for (const auto& e : j) out.push_back(edge_of(c, e));
  return out;
}

TermKind kind_from(const Json& j) {
  const auto s = j.get<std::string>();
  if (s == "star") return TermKind::Star;
  if (s == "plaquette") return TermKind::Plaquette;
  malformed("unknown term kind '" + s + "'");
}

Json term_ref(const CLHInstance& instance, int t) {
  const auto& term = instance.term(t);
  const auto& c = instance.complex();
  Json out;
  out["kind"] = kind_name(term.kind);
  out["site"] = term.kind == TermKind::Star ? vertex_json(c, term.site) : face_json(c, term.site);
  return out;
}

int term_from_ref(const CLHInstance& instance, const Json& j) {
  const auto& c = instance.complex();
  const TermKind kind = kind_from(field(j, "kind"));
  return kind == TermKind::Star ? instance.star_term(vertex_of(c, field(j, "site")))
                                : instance.plaquette_term(face_of(c, field(j, "site")));
}

Json mat2_json(const Mat2& m) { return matrix_to_json(m); }

Mat2 mat2_from(const Json& j) {
  const Mat m = matrix_from_json(j);
  if (m.rows() != 2) malformed("expected a 2 x 2 matrix");
  return m;
}

Json optional_bool(const std::optional<bool>& b) { return b ? Json(*b) : Json(nullptr); }

std::optional<bool> optional_bool_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<bool>();
}

Json strings_json(const std::map<int, StringOperator>& witnesses, const CLHInstance& instance) {
  Json out = Json::array();
  for (const auto& [t, op] : witnesses) out.push_back(string_to_json(op, instance));
  return out;
}

std::map<int, StringOperator> strings_from(const Json& j, const CLHInstance& instance) {
  if (!j.is_array()) malformed("expected a list of string operators");
  std::map<int, StringOperator> out;
  for (const auto& s : j) {
    StringOperator op = string_from_json(s, instance);
    const int t = op.target;
    if (!out.emplace(t, std::move(op)).second) malformed("duplicate string witness for " + instance.term_label(t));
  }
  return out;
}

void put_u64(std::ostream& os, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) os.put(static_cast<char>((v >> (8 * b)) & 0xffU));
}

std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) {
    const int c = is.get();
    if (c == EOF) malformed("truncated amplitude file");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * b);
  }
  return v;
}

}  // namespace

Json complex_to_json(const SurfaceComplex& complex) {
  const bool numeric = complex.numeric_ids();
  Json out;
  out["vertices"] = Json::array();
  for (int v = 0; v < complex.vertex_count(); ++v) out["vertices"].push_back(vertex_json(complex, v));
  out["edges"] = Json::array();
  for (int e = 0; e < complex.edge_count(); ++e) {
    const auto [a, b] = complex.edge_vertices(e);
    out["edges"].push_back(Json::array({edge_json(complex, e), vertex_json(complex, a), vertex_json(complex, b)}));
  }
  out["faces"] = Json::array();
  for (int f = 0; f < complex.face_count(); ++f) {
    Json face = Json::array({face_json(complex, f)});
    for (int e : complex.face_edges(f)) face.push_back(id_value(complex.edge_id(e), numeric));
    out["faces"].push_back(face);
  }
  if (complex.allows_multi_adjacency()) out["allow_multi_adjacency"] = true;
  return out;
}

SurfaceComplex complex_from_json(const Json& j) {
  const RawComplex raw = guarded("complex", [&] {
    RawComplex r;
    for (const auto& v : array_field(j, "vertices")) r.vertices.push_back(read_id(v));
    for (const auto& e : array_field(j, "edges")) {
      if (!e.is_array() || e.size() != 3) malformed("edges are [id, v1, v2]", {"got=" + e.dump()});
      r.edges.push_back({read_id(e[0]), {read_id(e[1]), read_id(e[2])}});
    }
    for (const auto& f : array_field(j, "faces")) {
      if (!f.is_array() || f.empty()) malformed("faces are [id, e1, e2, ...]", {"got=" + f.dump()});
      std::vector<std::string> walk;
      for (std::size_t i = 1; i < f.size(); ++i) walk.push_back(read_id(f[i]));
      r.faces.push_back({read_id(f[0]), walk});
    }
    if (auto it = j.find("allow_multi_adjacency"); it != j.end()) r.allow_multi_adjacency = it->get<bool>();
    return r;
  });
  return build_complex(raw);
}

Json matrix_to_json(const Mat& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
  return out;
}

Mat matrix_from_json(const Json& j) {
  return guarded("matrix", [&] {
    if (!j.is_array()) malformed("a matrix is a row-major list of [re, im] pairs");
    const auto count = static_cast<Eigen::Index>(j.size());
    Eigen::Index dim = 1;
    while (dim * dim < count) dim *= 2;
    if (dim * dim != count) malformed("matrix entry count is not 4^r", {"entries=" + std::to_string(count)});
    Mat m(dim, dim);
    for (Eigen::Index i = 0; i < count; ++i) {
      const Json& z = j[static_cast<std::size_t>(i)];
      if (!z.is_array() || z.size() != 2) malformed("matrix entries are [re, im]", {"got=" + z.dump()});
      m(i / dim, i % dim) = cplx(z[0].get<double>(), z[1].get<double>());
    }
    return m;
  });
}

Json instance_to_json(const CLHInstance& instance) {
  const auto& c = instance.complex();
  Json out = complex_to_json(c);
  out["terms"] = Json::array();
  for (int t = 0; t < instance.term_count(); ++t) {
    const auto& term = instance.term(t);
    Json entry = term_ref(instance, t);
    entry["qubit_order"] = edges_json(c, term.qubits);
    entry["matrix"] = matrix_to_json(term.matrix);
    out["terms"].push_back(entry);
  }
  return out;
}

CLHInstance instance_from_json(const Json& j, const Tolerances& tol) {
  auto complex = std::make_shared<const SurfaceComplex>(complex_from_json(j));
  const auto& c = *complex;
  const TermMatrices mats = guarded("instance", [&] {
    TermMatrices m;
    m.stars.resize(c.vertex_count());
    m.plaquettes.resize(c.face_count());
    for (const auto& t : array_field(j, "terms")) {
      const TermKind kind = kind_from(field(t, "kind"));
      const int site = kind == TermKind::Star ? vertex_of(c, field(t, "site")) : face_of(c, field(t, "site"));
      const std::string label = std::string(kind_name(kind)) + ":" + read_id(field(t, "site"));
      Mat& slot = kind == TermKind::Star ? m.stars[site] : m.plaquettes[site];
      if (slot.size() != 0) malformed("duplicate term " + label);
      const auto internal = site_qubits(c, kind, site);
      const auto order = edges_from(c, field(t, "qubit_order"));
      // File qubit i sits at internal position positions[i].
      std::vector<int> positions;
      for (int q : order) {
        auto it = std::find(internal.begin(), internal.end(), q);
        if (it == internal.end() || std::count(order.begin(), order.end(), q) != 1)
          malformed("qubit_order of " + label + " is not a permutation of its edges");
        positions.push_back(static_cast<int>(it - internal.begin()));
      }
      if (order.size() != internal.size()) malformed("qubit_order of " + label + " misses edges");
      const Mat file = matrix_from_json(field(t, "matrix"));
      if (file.rows() != (Eigen::Index{1} << order.size()))
        throw Error(ErrorCode::WrongDimension, "matrix of " + label + " does not match its qubit count",
                    {"term=" + label, "rows=" + std::to_string(file.rows())});
      slot = embed(file, positions, static_cast<int>(order.size()));
    }
    // Sites without a listed term carry the identity.
    for (int v = 0; v < c.vertex_count(); ++v)
      if (m.stars[v].size() == 0) m.stars[v] = identity_on(static_cast<int>(c.vertex_edges(v).size()));
    for (int f = 0; f < c.face_count(); ++f)
      if (m.plaquettes[f].size() == 0) m.plaquettes[f] = identity_on(static_cast<int>(c.face_edges(f).size()));
    return m;
  });
  return attach_terms(complex, mats, tol);
}

Json witness_to_json(const ReductionWitness& witness, const SurfaceComplex& complex) {
  Json steps = Json::array();
  for (const auto& s : witness.steps) {
    Json step;
    step["qubit"] = edge_json(complex, s.qubit);
    step["projector"] = mat2_json(s.projector);
    steps.push_back(step);
  }
  return Json{{"steps", steps}};
}

ReductionWitness witness_from_json(const Json& j, const SurfaceComplex& complex) {
  return guarded("reduction witness", [&] {
    ReductionWitness w;
    for (const auto& s : array_field(j, "steps"))
      w.steps.push_back({edge_of(complex, field(s, "qubit")), mat2_from(field(s, "projector"))});
    return w;
  });
}

Json calibration_to_json(const QubitCalibration& calibration, const SurfaceComplex& complex) {
  Json out = Json::array();
  for (std::size_t q = 0; q < calibration.unitaries.size(); ++q) {
    Json entry;
    entry["qubit"] = edge_json(complex, static_cast<int>(q));
    entry["unitary"] = mat2_json(calibration.unitaries[q]);
    out.push_back(entry);
  }
  return Json{{"unitaries", out}};
}

QubitCalibration calibration_from_json(const Json& j, const SurfaceComplex& complex) {
  return guarded("calibration", [&] {
    QubitCalibration cal;
    cal.unitaries.assign(complex.edge_count(), Mat2::Identity());
    std::vector<bool> seen(complex.edge_count(), false);
    for (const auto& u : array_field(j, "unitaries")) {
      const int q = edge_of(complex, field(u, "qubit"));
      if (seen[q]) malformed("duplicate calibration for edge " + complex.edge_id(q));
      seen[q] = true;
      cal.unitaries[q] = mat2_from(field(u, "unitary"));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) malformed("calibration does not cover every edge");
    return cal;
  });
}

Json string_to_json(const StringOperator& op, const CLHInstance& instance) {
  const auto& c = instance.complex();
  Json out;
  out["kind"] = string_kind_name(op.kind);
  out["target"] = term_ref(instance, op.target);
  out["support"] = edges_json(c, op.support);
  out["letters"] = std::string(op.letters.begin(), op.letters.end());
  out["ribbon"] = edges_json(c, op.ribbon);
  out["terminal_star"] = op.terminal_star >= 0 ? vertex_json(c, op.terminal_star) : Json(nullptr);
  out["terminal_plaquette"] =
      op.terminal_plaquette != kVirtualPlaquette ? face_json(c, op.terminal_plaquette) : Json(nullptr);
  return out;
}

StringOperator string_from_json(const Json& j, const CLHInstance& instance) {
  const auto& c = instance.complex();
  return guarded("string operator", [&] {
    StringOperator op;
    const auto kind = field(j, "kind").get<std::string>();
    if (kind == string_kind_name(StringKind::PathX)) {
      op.kind = StringKind::PathX;
    } else if (kind == string_kind_name(StringKind::CopathZ)) {
      op.kind = StringKind::CopathZ;
    } else {
      malformed("unknown string kind '" + kind + "'");
    }
    op.target = term_from_ref(instance, field(j, "target"));
    op.support = edges_from(c, field(j, "support"));
    const auto letters = field(j, "letters").get<std::string>();
    if (letters.size() != op.support.size() || letters.find_first_not_of("IXYZ") != std::string::npos)
      malformed("letters must be one of IXYZ per support edge");
    op.letters.assign(letters.begin(), letters.end());
    op.ribbon = edges_from(c, field(j, "ribbon"));
    const Json& s = field(j, "terminal_star");
    op.terminal_star = s.is_null() ? -1 : vertex_of(c, s);
    const Json& p = field(j, "terminal_plaquette");
    op.terminal_plaquette = p.is_null() ? kVirtualPlaquette : face_of(c, p);
    return op;
  });
}

Json punctured_to_json(const PuncturedHamiltonian& p) {
  Json out;
  out["base"] = instance_to_json(p.base);
  out["removed"] = Json::array();
  for (int t : p.removed) out["removed"].push_back(term_ref(p.base, t));
  out["witnesses"] = strings_json(p.witnesses, p.base);
  return out;
}

PuncturedHamiltonian punctured_from_json(const Json& j, const Tolerances& tol) {
  const CLHInstance base = instance_from_json(guarded("punctured", [&] { return field(j, "base"); }), tol);
  return guarded("punctured", [&] {
    auto witnesses = strings_from(field(j, "witnesses"), base);
    std::vector<int> removed;
    for (const auto& r : array_field(j, "removed")) removed.push_back(term_from_ref(base, r));
    std::sort(removed.begin(), removed.end());
    std::vector<int> keys;
    for (const auto& [t, op] : witnesses) keys.push_back(t);
    if (removed != keys) malformed("removed sites and string witnesses disagree");
    return puncture(base, witnesses);
  });
}

Json triangulation_to_json(const Triangulation& t, const SurfaceComplex& complex) {
  Json out;
  out["r"] = t.r;
  out["R"] = t.R;
  out["D"] = t.D;
  out["triangles"] = Json::array();
  for (const auto& tri : t.triangles) {
    Json entry;
    entry["edges"] = edges_json(complex, tri.edges);
    entry["corners"] = Json::array();
    for (int v : tri.corners) entry["corners"].push_back(vertex_json(complex, v));
    entry["witness_center"] = vertex_json(complex, tri.witness_center);
    entry["side_centers"] = Json::array();
    for (int v : tri.side_centers) entry["side_centers"].push_back(vertex_json(complex, v));
    out["triangles"].push_back(entry);
  }
  return out;
}

Triangulation triangulation_from_json(const Json& j, const SurfaceComplex& complex) {
  return guarded("triangulation", [&] {
    Triangulation t;
    t.r = field(j, "r").get<int>();
    t.R = field(j, "R").get<int>();
    t.D = field(j, "D").get<int>();
    auto three = [&](const Json& a, const char* what) {
      if (!a.is_array() || a.size() != 3) malformed(std::string(what) + " must list three vertices");
      return std::array<int, 3>{vertex_of(complex, a[0]), vertex_of(complex, a[1]), vertex_of(complex, a[2])};
    };
    for (const auto& tri : array_field(j, "triangles")) {
      TriangleRegion region;
      region.edges = edges_from(complex, field(tri, "edges"));
      region.corners = three(field(tri, "corners"), "corners");
      region.witness_center = vertex_of(complex, field(tri, "witness_center"));
      region.side_centers = three(field(tri, "side_centers"), "side_centers");
      t.triangles.push_back(region);
    }
    return t;
  });
}

Json partition_to_json(const SuperParticlePartition& p, const CLHInstance& instance) {
  const auto& c = instance.complex();
  Json out;
  out["k"] = p.k;
  out["size_bound"] = p.size_bound;
  out["max_block_size"] = p.max_block_size();
  out["blocks"] = Json::array();
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    Json block;
    block["vertex"] = p.block_vertex.at(b);
    block["edges"] = edges_json(c, p.blocks[b]);
    out["blocks"].push_back(block);
  }
  out["centers"] = Json::array();
  for (std::size_t i = 0; i < p.centers.size(); ++i) {
    Json center = term_ref(instance, p.centers[i]);
    center["trivial_edge"] = edge_json(c, p.center_trivial_edge.at(i));
    out["centers"].push_back(center);
  }
  return out;
}

Json equivalence_to_json(const EquivalenceReport& report, const CLHInstance& instance) {
  Json out;
  out["ok"] = report.ok();
  out["windows_checked"] = report.windows_checked;
  out["violations"] = report.violations;
  out["coefficients"] = Json::array();
  for (std::size_t t = 0; t < report.coefficients.size(); ++t) {
    const auto& c = report.coefficients[t];
    if (!c) continue;
    Json entry = term_ref(instance, static_cast<int>(t));
    entry["u"] = c->identity;
    entry["u_prime"] = c->pauli;
    out["coefficients"].push_back(entry);
  }
  return out;
}

Json report_to_json(const SynthesisReport& report, const CLHInstance& instance) {
  Json out;
  out["branch"] = branch_name(report.branch);
  out["backend"] = backend_name(report.backend);
  out["oracle"] = report.oracle;
  out["record"] = Json::array();
  for (const auto& o : report.record) {
    Json entry = term_ref(instance, o.term);
    entry["value"] = o.value;
    out["record"].push_back(entry);
  }
  out["corrections"] = Json::array();
  for (const auto& s : report.corrections) out["corrections"].push_back(string_to_json(s, instance));
  out["final_values"] = report.final_values;
  out["final_energy"] = report.final_energy;
  out["reference_energy"] = report.reference_energy;
  out["reference_source"] = report.reference_source;
  out["two_local"] = optional_bool(report.two_local);
  out["certified"] = report.certified;
  return out;
}

Json certificate_to_json(const NpCertificate& certificate, const CLHInstance& instance) {
  const auto& c = instance.complex();
  Json out;
  out["branch"] = branch_name(certificate.branch);
  out["witness"] = witness_to_json(certificate.witness, c);
  out["calibration"] = calibration_to_json(certificate.calibration, c);
  out["witnesses"] = strings_json(certificate.witnesses, instance);
  out["two_local"] = optional_bool(certificate.two_local);
  out["punctured_oracle"] = certificate.punctured_oracle;
  out["punctured_ground_energy"] = certificate.punctured_ground_energy;
  out["removed_minimum"] = certificate.removed_minimum;
  out["ground_energy"] = certificate.ground_energy;
  return out;
}

NpCertificate certificate_from_json(const Json& j, const CLHInstance& instance) {
  const auto& c = instance.complex();
  return guarded("certificate", [&] {
    NpCertificate cert;
    const auto branch = field(j, "branch").get<std::string>();
    if (branch == branch_name(Branch::Closed)) {
      cert.branch = Branch::Closed;
    } else if (branch == branch_name(Branch::Punctured)) {
      cert.branch = Branch::Punctured;
    } else {
      malformed("unknown branch '" + branch + "'");
    }
    cert.witness = witness_from_json(field(j, "witness"), c);
    cert.calibration = calibration_from_json(field(j, "calibration"), c);
    cert.witnesses = strings_from(field(j, "witnesses"), instance);
    cert.two_local = optional_bool_from(field(j, "two_local"));
    cert.punctured_oracle = field(j, "punctured_oracle").get<std::string>();
    cert.punctured_ground_energy = field(j, "punctured_ground_energy").get<double>();
    cert.removed_minimum = field(j, "removed_minimum").get<double>();
    cert.ground_energy = field(j, "ground_energy").get<double>();
    return cert;
  });
}

Json verdict_to_json(const CertificateVerdict& verdict) {
  Json out;
  out["accepted"] = verdict.accepted();
  out["checks"] = Json::array();
  for (const auto& c : verdict.checks)
    out["checks"].push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return out;
}

Json state_to_json(const QuantumState& state, const SurfaceComplex& complex, const std::string& amplitudes_file) {
  Json out;
  out["backend"] = backend_name(state.backend());
  Json order = Json::array();
  for (int q = 0; q < state.qubit_count(); ++q) order.push_back(edge_json(complex, q));
  out["qubit_order"] = order;
  if (state.backend() == Backend::Stabilizer) {
    out["stabilizers"] = state.tableau().stabilizers();
    out["destabilizers"] = state.tableau().destabilizers();
  } else {
    out["dimension"] = state.amplitudes().size();
    out["amplitudes_file"] = amplitudes_file;
  }
  return out;
}

void write_amplitudes(const std::filesystem::path& path, const Vec& psi, const SurfaceComplex& complex) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  Json header;
  header["format"] = "clh2d-amplitudes";
  header["dimension"] = psi.size();
  Json order = Json::array();
  for (int q = 0; q < complex.edge_count(); ++q) order.push_back(edge_json(complex, q));
  header["qubit_order"] = order;
  const std::string text = header.dump();
  os.write(kMagic, sizeof kMagic);
  put_u64(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    put_u64(os, std::bit_cast<std::uint64_t>(psi(i).real()));
    put_u64(os, std::bit_cast<std::uint64_t>(psi(i).imag()));
  }
}

Vec read_amplitudes(const std::filesystem::path& path, const SurfaceComplex& complex) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string());
  char magic[sizeof kMagic];
  if (!is.read(magic, sizeof magic) || !std::equal(magic, magic + sizeof magic, kMagic))
    malformed("not an amplitude file: " + path.string());
  const std::uint64_t length = get_u64(is);
  if (length > (1U << 24)) malformed("amplitude header too long");
  std::string text(length, '\0');
  if (!is.read(text.data(), static_cast<std::streamsize>(length))) malformed("truncated amplitude header");
  const Json header = Json::parse(text, nullptr, false);
  if (header.is_discarded()) malformed("amplitude header is not JSON");
  const auto dim = guarded("amplitude header", [&] { return field(header, "dimension").get<std::int64_t>(); });
  if (dim != (std::int64_t{1} << complex.edge_count()))
    malformed("amplitude dimension does not match the complex", {"dimension=" + std::to_string(dim)});
  Vec psi(dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    const double re = std::bit_cast<double>(get_u64(is));
    const double im = std::bit_cast<double>(get_u64(is));
    psi(i) = cplx(re, im);
  }
  return psi;
}

Json error_to_json(const Error& e) {
  Json err;
  err["code"] = error_name(e.code());
  err["message"] = e.what();
  err["details"] = e.details();
  return Json{{"error", err}};
}

Json load(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::InvalidArgument, "cannot read " + path.string(), {"path=" + path.string()});
  std::stringstream buffer;
  buffer << is.rdbuf();
  Json j = Json::parse(buffer.str(), nullptr, false);
  if (j.is_discarded()) malformed("not valid JSON: " + path.string(), {"path=" + path.string()});
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void save(const std::filesystem::path& path, const Json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string(), {"path=" + path.string()});
  os << dump(j);
}

}  // namespace clh2d::io
