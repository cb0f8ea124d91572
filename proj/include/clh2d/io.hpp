#pragma once

#include "clh2d/algebra.hpp"
#include "clh2d/partition.hpp"
#include "clh2d/reduction.hpp"
#include "clh2d/state.hpp"
#include "clh2d/structure.hpp"
#include "clh2d/synthesis.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace clh2d::io {

// Ordered keys keep artifacts byte-identical across runs.
using Json = nlohmann::ordered_json;

inline constexpr std::string_view kToolVersion = "clh2d 1.0.0";

// All readers throw ParseError on malformed shapes; structural problems keep
// their own codes (NonSurface, NonCommuting, ...).
Json complex_to_json(const SurfaceComplex& complex);
SurfaceComplex complex_from_json(const Json& j);

Json matrix_to_json(const Mat& m);
Mat matrix_from_json(const Json& j);

// Complex fields plus terms:[{site, kind, qubit_order, matrix}].
Json instance_to_json(const CLHInstance& instance);
CLHInstance instance_from_json(const Json& j, const Tolerances& tol = {});

// Ordered (qubit id, projector) steps.
Json witness_to_json(const ReductionWitness& witness, const SurfaceComplex& complex);
ReductionWitness witness_from_json(const Json& j, const SurfaceComplex& complex);

Json calibration_to_json(const QubitCalibration& calibration, const SurfaceComplex& complex);
QubitCalibration calibration_from_json(const Json& j, const SurfaceComplex& complex);

Json string_to_json(const StringOperator& op, const CLHInstance& instance);
StringOperator string_from_json(const Json& j, const CLHInstance& instance);

// Base instance, removed sites and a string witness per removed site.
Json punctured_to_json(const PuncturedHamiltonian& p);
PuncturedHamiltonian punctured_from_json(const Json& j, const Tolerances& tol = {});

Json triangulation_to_json(const Triangulation& t, const SurfaceComplex& complex);
Triangulation triangulation_from_json(const Json& j, const SurfaceComplex& complex);

Json partition_to_json(const SuperParticlePartition& p, const CLHInstance& instance);

Json equivalence_to_json(const EquivalenceReport& report, const CLHInstance& instance);
Json report_to_json(const SynthesisReport& report, const CLHInstance& instance);
Json certificate_to_json(const NpCertificate& certificate, const CLHInstance& instance);
NpCertificate certificate_from_json(const Json& j, const CLHInstance& instance);
Json verdict_to_json(const CertificateVerdict& verdict);

// Stabilizer states inline their generators; dense states point at a binary
// file: magic, header length, JSON header with the qubit order, then (re, im) doubles.
Json state_to_json(const QuantumState& state, const SurfaceComplex& complex, const std::string& amplitudes_file = {});
void write_amplitudes(const std::filesystem::path& path, const Vec& psi, const SurfaceComplex& complex);
Vec read_amplitudes(const std::filesystem::path& path, const SurfaceComplex& complex);

Json error_to_json(const Error& e);

Json load(const std::filesystem::path& path);
// Two-space indent and a trailing newline.
void save(const std::filesystem::path& path, const Json& j);
std::string dump(const Json& j);

}  // namespace clh2d::io
