// io.hpp — file formats: Hamiltonian JSON, trace CSV/JSON, spectrum CSV with
// JSON sidecar, estimate JSON, and run manifests.
//
// Formats:
//  - Hamiltonian: {"dim": n, "real": [[...]], "imag": [[...]]}; "imag"
//    optional (defaults to zero); the loader validates Hermiticity.
//  - Trace CSV: header "t,p,ne,seed"; ne/seed repeated on each row so a row
//    is self-describing.
//  - Spectrum CSV: header "omega,amp"; sidecar JSON carries h0, h01,
//    omega_p, nu_mean, dh, domega (all angular frequencies).

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qleak/estimator.hpp"
#include "qleak/hermitian.hpp"
#include "qleak/sampling.hpp"
#include "qleak/spectral.hpp"

namespace qleak {

inline constexpr const char* kToolVersion = "0.1.0";

// Throws std::runtime_error on unreadable/malformed files and
// NonHermitianInput when the matrix fails validation.
HermitianOperator load_hamiltonian(const std::filesystem::path& path);
void save_hamiltonian(const HermitianOperator& H,
                      const std::filesystem::path& path);

void save_trace_csv(const RabiTrace& trace, const std::filesystem::path& path);
RabiTrace load_trace_csv(const std::filesystem::path& path);
void save_trace_json(const RabiTrace& trace, const std::filesystem::path& path);

// Writes <path> (CSV) and <path>.json (sidecar statistics).
void save_spectrum(const Spectrum& spec, const std::filesystem::path& path);

void save_estimate(const LeakageEstimate& est,
                   const std::filesystem::path& path);

struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::uint64_t seed = 0;
    std::string plan_summary;
    std::vector<std::string> outputs;
    double duration_seconds = 0.0;
};

void save_manifest(const RunManifest& manifest,
                   const std::filesystem::path& path);

// Campaign outputs: one CSV row per trial plus a summary JSON.
void save_trial_records(const std::vector<TrialRecord>& trials,
                        const std::filesystem::path& path);
std::vector<std::uint64_t> load_trial_seeds(const std::filesystem::path& path);

}  // namespace qleak
