#include "clh2d/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace clh2d;
using io::Json;

namespace {

namespace fs = std::filesystem;

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "clh2d_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream s;
  s << is.rdbuf();
  return s.str();
}

struct Run {
  int status = -1;
  std::string err;
};

// Runs the tool with stdout discarded and stderr captured.
Run run(const std::string& args) {
  const auto err = workdir() / "stderr.txt";
  const std::string cmd = std::string(CLH2D_CLI) + " " + args + " > /dev/null 2> " + err.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(err)};
}

void expect_ok(const Run& r) { EXPECT_EQ(r.status, 0) << r.err; }

std::string error_code(const Run& r) { return Json::parse(r.err)["error"]["code"].get<std::string>(); }

}  // namespace

TEST(Cli, GenToricThenValidate) {
  expect_ok(run("gen toric --size 3x3 --closed --out " + path("t33.json")));
  expect_ok(run("validate --in " + path("t33.json") + " --out " + path("v.json")));
  const Json v = io::load(path("v.json"));
  EXPECT_EQ(v["tool"], io::kToolVersion);
  EXPECT_EQ(v["config"]["command"], "validate");
  EXPECT_EQ(v["result"]["qubits"], 18);
  EXPECT_TRUE(v["result"]["closed"].get<bool>());
  EXPECT_LT(v["result"]["commutation"]["max_residual"].get<double>(), 1e-12);
}

TEST(Cli, PrepareMatchesCertifyAndIsReproducible) {
  expect_ok(run("gen planar --size 2x2 --scramble --seed 3 --out " + path("s22.json")));
  expect_ok(run("prepare --in " + path("s22.json") + " --seed 7 --backend statevector --out " + path("p1.json")));
  expect_ok(run("prepare --in " + path("s22.json") + " --seed 7 --backend statevector --out " + path("p2.json") +
                " --state " + path("p1.json.amp.copy")));
  expect_ok(run("certify --in " + path("s22.json") + " --out " + path("c.json")));
  const Json p = io::load(path("p1.json"));
  const Json c = io::load(path("c.json"));
  EXPECT_EQ(p["result"]["state"]["backend"], "statevector");
  EXPECT_NEAR(p["result"]["report"]["final_energy"].get<double>(),
              c["result"]["certificate"]["ground_energy"].get<double>(), 1e-6);
  EXPECT_TRUE(c["result"]["verdict"]["accepted"].get<bool>());
  EXPECT_EQ(slurp(path("p1.json.amp")), slurp(path("p1.json.amp.copy")));

  // Same input, seed and config give identical bytes.
  const std::string first = slurp(path("p1.json")), first_amp = slurp(path("p1.json.amp"));
  expect_ok(run("prepare --in " + path("s22.json") + " --seed 7 --backend statevector --out " + path("p1.json")));
  EXPECT_EQ(slurp(path("p1.json")), first);
  EXPECT_EQ(slurp(path("p1.json.amp")), first_amp);
  const auto amp = io::read_amplitudes(path("p1.json.amp"), io::complex_from_json(io::load(path("s22.json"))));
  EXPECT_NEAR(amp.norm(), 1.0, 1e-12);
}

TEST(Cli, StabilizerPrepareOnLargeToric) {
  expect_ok(run("gen toric --size 6x6 --closed --out " + path("t66.json")));
  expect_ok(run("prepare --in " + path("t66.json") + " --seed 1 --out " + path("p66.json")));
  const Json p = io::load(path("p66.json"));
  EXPECT_EQ(p["result"]["state"]["backend"], "stabilizer");
  EXPECT_EQ(p["result"]["state"]["stabilizers"].size(), 72u);
  EXPECT_NEAR(p["result"]["report"]["final_energy"].get<double>(), -72.0, 1e-9);
}

TEST(Cli, NonCommutingInputNamesThePair) {
  Json j = io::load(path("t33.json"));
  auto& m = j["terms"][0]["matrix"];
  // Add a single-qubit X on the first star qubit: (-Z^4 - X I I I) / 2.
  const Mat zzzz = io::matrix_from_json(m);
  Mat x = Mat::Zero(16, 16);
  for (int i = 0; i < 16; ++i) x(i ^ 8, i) = 1.0;
  m = io::matrix_to_json(0.5 * zzzz - 0.5 * x);
  io::save(path("bad.json"), j);
  const auto r = run("analyze --in " + path("bad.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(error_code(r), "NonCommuting");
  EXPECT_NE(r.err.find("star:"), std::string::npos) << r.err;
}

TEST(Cli, ErrorsAreMachineReadable) {
  auto r = run("prepare --in " + path("t33.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(error_code(r), "InvalidArgument");

  std::ofstream(path("garbage.json")) << "[1, 2";
  r = run("validate --in " + path("garbage.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(error_code(r), "ParseError");

  r = run("prepare --in x.json --seed 1 --backend quantum");
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(error_code(r), "Usage");

  r = run("gen toric --size 3by3");
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(error_code(r), "InvalidArgument");
}

TEST(Cli, TamperedCertificateIsRejected) {
  expect_ok(run("gen planar --size 3x2 --scramble --seed 5 --out " + path("s32.json")));
  expect_ok(run("certify --in " + path("s32.json") + " --out " + path("c32.json")));
  Json c = io::load(path("c32.json"));
  auto& e = c["result"]["certificate"]["ground_energy"];
  e = e.get<double>() - 0.5;
  io::save(path("c32_bad.json"), c);
  expect_ok(run("certify --in " + path("s32.json") + " --certificate " + path("c32.json")));
  const auto r = run("certify --in " + path("s32.json") + " --certificate " + path("c32_bad.json") + " --out " +
                     path("verdict.json"));
  EXPECT_EQ(r.status, 3);
  EXPECT_FALSE(io::load(path("verdict.json"))["result"]["verdict"]["accepted"].get<bool>());
}

TEST(Cli, ReduceEquivalencePuncture) {
  expect_ok(run("gen planar --size 2x2 --identity-stars 0 --scramble --seed 9 --out " + path("id.json")));
  expect_ok(run("reduce --in " + path("id.json") + " --out " + path("r.json")));
  expect_ok(run("equivalence --in " + path("id.json") + " --out " + path("eq.json")));
  expect_ok(run("puncture --in " + path("s32.json") + " --out " + path("pu.json")));
  const Json eq = io::load(path("eq.json"));
  EXPECT_TRUE(eq["result"]["equivalence"]["ok"].get<bool>());
  const auto punctured = io::punctured_from_json(io::load(path("pu.json"))["result"]);
  EXPECT_EQ(punctured.removed.size(), punctured.witnesses.size());
}

TEST(Cli, GridPartitionIsTwoLocal) {
  expect_ok(run("gen planar --size 56x56 --out " + path("p56.json")));
  expect_ok(run("gen triangulation --size 56x56 --out " + path("tri56.json")));
  expect_ok(run("partition --in " + path("p56.json") + " --triangulation " + path("tri56.json") + " --out " +
                path("part.json")));
  const Json part = io::load(path("part.json"));
  EXPECT_TRUE(part["result"]["two_local"].get<bool>());
  EXPECT_TRUE(part["result"]["within_bound"].get<bool>());
  EXPECT_TRUE(part["result"]["quasi_euclidean"]["ok"].get<bool>());
}
