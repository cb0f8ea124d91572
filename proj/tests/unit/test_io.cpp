#include "clh2d/io.hpp"
#include "clh2d/linalg.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace clh2d;
using io::Json;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "clh2d_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream s;
  s << is.rdbuf();
  return s.str();
}

void expect_parse_error(const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError) << e.what();
  }
}

CLHInstance calibrated_surface(const SurfaceComplex& c, std::uint64_t seed) {
  const auto inst = scramble(surface_code_instance(c), seed);
  return apply_calibration(inst, calibrate(inst));
}

}  // namespace

TEST(Io, ComplexRoundTrip) {
  const auto c = planar_grid(3, 2);
  const Json j = io::complex_to_json(c);
  EXPECT_TRUE(j["vertices"][0].is_number_integer());
  EXPECT_EQ(io::complex_to_json(io::complex_from_json(j)), j);
}

TEST(Io, StringIdsStayStrings) {
  const Json j = Json::parse(R"({"vertices":["a","b","c"],
    "edges":[["ab","a","b"],["bc","b","c"],["ca","c","a"]],
    "faces":[["in","ab","bc","ca"]]})");
  const auto c = io::complex_from_json(j);
  EXPECT_EQ(c.face_count(), 1);
  EXPECT_EQ(io::complex_to_json(c)["edges"][0][0], "ab");
}

TEST(Io, InstanceRoundTripIsBitExact) {
  const auto inst = scramble(surface_code_instance(planar_grid(2, 2)), 4);
  const auto back = io::instance_from_json(io::instance_to_json(inst));
  ASSERT_EQ(back.term_count(), inst.term_count());
  for (int t = 0; t < inst.term_count(); ++t) {
    EXPECT_EQ(back.term(t).qubits, inst.term(t).qubits);
    EXPECT_TRUE(back.term(t).matrix == inst.term(t).matrix) << inst.term_label(t);
  }
  EXPECT_EQ(io::dump(io::instance_to_json(back)), io::dump(io::instance_to_json(inst)));
}

TEST(Io, FileQubitOrderIsHonoured) {
  const auto inst = scramble(surface_code_instance(planar_grid(2, 2)), 8);
  Json j = io::instance_to_json(inst);
  // Reverse the qubit order of every term and permute its matrix to match.
  for (auto& t : j["terms"]) {
    auto order = t["qubit_order"];
    const int r = static_cast<int>(order.size());
    std::vector<int> positions(r);
    for (int i = 0; i < r; ++i) positions[i] = r - 1 - i;
    const Mat m = io::matrix_from_json(t["matrix"]);
    std::reverse(order.begin(), order.end());
    t["qubit_order"] = order;
    t["matrix"] = io::matrix_to_json(embed(m, positions, r));
  }
  const auto back = io::instance_from_json(j);
  for (int t = 0; t < inst.term_count(); ++t)
    EXPECT_LT((back.term(t).matrix - inst.term(t).matrix).norm(), 1e-15) << inst.term_label(t);
}

TEST(Io, MissingTermsAreIdentity) {
  Json j = io::complex_to_json(torus_grid(2, 2));
  j["terms"] = Json::array();
  const auto inst = io::instance_from_json(j);
  for (const auto& t : inst.terms()) EXPECT_TRUE(t.matrix.isIdentity());
}

TEST(Io, MalformedInputs) {
  const Json good = io::instance_to_json(toric_instance(torus_grid(2, 2)));
  expect_parse_error([&] {
    Json j = good;
    j.erase("faces");
    io::instance_from_json(j);
  });
  expect_parse_error([&] {
    Json j = good;
    j["terms"][0]["matrix"].erase(0);
    io::instance_from_json(j);
  });
  expect_parse_error([&] {
    Json j = good;
    j["terms"][0]["site"] = 999;
    io::instance_from_json(j);
  });
  expect_parse_error([&] {
    Json j = good;
    j["terms"][0]["qubit_order"][0] = j["terms"][0]["qubit_order"][1];
    io::instance_from_json(j);
  });
  expect_parse_error([&] {
    Json j = good;
    j["terms"].push_back(j["terms"][0]);
    io::instance_from_json(j);
  });
  expect_parse_error([&] {
    Json j = good;
    j["edges"][0] = "oops";
    io::instance_from_json(j);
  });
  const auto bad = scratch("bad.json");
  std::ofstream(bad) << "{ not json";
  expect_parse_error([&] { io::load(bad); });
}

TEST(Io, NonCommutingFileNamesThePair) {
  Json j = io::instance_to_json(toric_instance(torus_grid(2, 2)));
  // A single X on one star qubit anticommutes with the other star on that edge.
  j["terms"][0]["matrix"] = io::matrix_to_json(-0.5 * pauli_string("ZZZZ") - 0.5 * pauli_string("XIII"));
  try {
    io::instance_from_json(j);
    ADD_FAILURE() << "no error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonCommuting);
    EXPECT_NE(std::string(e.what()).find("star:"), std::string::npos) << e.what();
  }
}

TEST(Io, WitnessCalibrationAndStrings) {
  const auto c = planar_grid(3, 3);
  const auto inst = calibrated_surface(c, 6);
  const auto roles = classify_roles(inst);
  const auto fixable = fixable_set(inst, roles);
  ASSERT_FALSE(fixable.empty());
  const auto p = puncture(inst, fixable);
  const Json pj = io::punctured_to_json(p);
  const auto back = io::punctured_from_json(pj);
  EXPECT_EQ(back.removed, p.removed);
  EXPECT_EQ(io::dump(io::punctured_to_json(back)), io::dump(pj));
  for (const auto& [t, op] : back.witnesses) EXPECT_TRUE(certify_string(inst, op).passed(1e-9));

  ReductionWitness w{{{3, Mat2{{1, 0}, {0, 0}}}, {5, Mat2{{0.5, 0.5}, {0.5, 0.5}}}}};
  const auto wb = io::witness_from_json(io::witness_to_json(w, c), c);
  ASSERT_EQ(wb.steps.size(), 2u);
  EXPECT_EQ(wb.steps[1].qubit, 5);
  EXPECT_TRUE(wb.steps[1].projector == w.steps[1].projector);

  const auto cal = calibrate(scramble(surface_code_instance(c), 6));
  const auto cb = io::calibration_from_json(io::calibration_to_json(cal, c), c);
  for (std::size_t q = 0; q < cal.unitaries.size(); ++q) EXPECT_TRUE(cb.unitaries[q] == cal.unitaries[q]);
}

TEST(Io, TriangulationRoundTrip) {
  const auto c = planar_grid(8, 8);
  const auto t = grid_triangulation(c, 8, 8, false, {.k = 4, .c = 2, .r = 8});
  const Json j = io::triangulation_to_json(t, c);
  const auto back = io::triangulation_from_json(j, c);
  ASSERT_EQ(back.triangles.size(), t.triangles.size());
  EXPECT_EQ(io::triangulation_to_json(back, c), j);
}

TEST(Io, CertificateRoundTripStaysAccepted) {
  const auto inst = scramble(surface_code_instance(planar_grid(3, 2)), 12);
  const auto cert = np_certificate(inst);
  const Json j = io::certificate_to_json(cert, inst);
  const auto back = io::certificate_from_json(j, inst);
  EXPECT_EQ(io::certificate_to_json(back, inst), j);
  EXPECT_TRUE(verify_certificate(inst, back).accepted());
}

TEST(Io, AmplitudeFileIsBitExactAndStable) {
  const auto c = planar_grid(2, 1);
  Rng rng(5);
  Vec psi(Eigen::Index{1} << c.edge_count());
  for (Eigen::Index i = 0; i < psi.size(); ++i) psi(i) = cplx(rng.uniform() - 0.5, rng.uniform() - 0.5);
  const auto a = scratch("a.bin"), b = scratch("b.bin");
  io::write_amplitudes(a, psi, c);
  EXPECT_TRUE(io::read_amplitudes(a, c) == psi);
  io::write_amplitudes(b, io::read_amplitudes(a, c), c);
  EXPECT_EQ(slurp(a), slurp(b));
  expect_parse_error([&] { io::read_amplitudes(a, planar_grid(2, 2)); });
}

TEST(Io, StabilizerStateDump) {
  const auto c = torus_grid(2, 2);
  auto s = QuantumState::zero(c.edge_count(), Backend::Stabilizer);
  s.apply(PauliOp{{0}, "X", 1});
  const Json j = io::state_to_json(s, c);
  EXPECT_EQ(j["backend"], "stabilizer");
  EXPECT_EQ(j["stabilizers"][0], "-ZIIIIIII");
}

TEST(Io, ErrorReport) {
  const Json j = io::error_to_json(Error(ErrorCode::TooLarge, "too big", {"n=30"}));
  EXPECT_EQ(io::dump(j), "{\n  \"error\": {\n    \"code\": \"TooLarge\",\n    \"message\": \"TooLarge: too big\",\n    \"details\": [\n      \"n=30\"\n    ]\n  }\n}\n");
}
