// saito/manifest.hpp — run configuration, on-disk artifact cache, manifests.
//
// A cache directory holds one subdirectory per group. Each stage of the
// pipeline (metric -> eta -> flat -> potential) writes its artifact as
// canonical polynomial text; `manifest.txt` records the configuration, the
// frame scales and constants, and a SHA-256 line per artifact. Everything the
// pipeline produces is deterministic for a given configuration, so a cache
// hit and a recomputation yield byte-identical files; artifacts that are
// missing or fail their recorded hash are recomputed and rewritten, and
// manifest lines whose files have disappeared or been tampered with are
// dropped until the owning stage runs again. The recorded thread setting is
// the requested one (default "auto"), never the resolved hardware count, so
// manifests are byte-identical across machines.
#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "saito/potential.hpp"

namespace saito {

inline constexpr const char* kToolVersion = "saito 1.0.0";

// --- byte-level helpers -----------------------------------------------------

std::string sha256_hex(std::string_view bytes);

// Whole-file read; throws std::runtime_error on failure.
std::string read_file(const std::filesystem::path& path);

// Write via temporary file + rename in the target directory, creating parent
// directories as needed. Readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// --- configuration ----------------------------------------------------------

struct RunConfig {
    GroupId group = GroupId::E6;
    Rational sigma = 2;                   // overall pairing scale
    SolverKind solver = SolverKind::Modular;
    std::string threads = "auto";         // "auto" or a positive integer
    std::uint64_t seed = 271828182845904523ULL;
    std::filesystem::path cache_dir = "saito_cache";
};

// "auto" -> hardware concurrency (at least 1); otherwise the parsed positive
// integer. Throws std::invalid_argument on anything else.
unsigned resolve_threads(const std::string& requested);

MetricOptions metric_options(const RunConfig& cfg);

// --- manifests --------------------------------------------------------------

struct RunManifest {
    std::string tool;                       // kToolVersion
    std::string group;
    Rational sigma = 2;
    std::string solver;                     // "exact" | "modular"
    std::string threads;                    // requested setting, verbatim
    std::uint64_t seed = 0;
    // Frame scales keyed by flat-coordinate name, plus the constants the
    // artifacts do not carry themselves. Present once the owning stage ran.
    std::map<std::string, Rational> frame_scales;
    std::optional<Rational> frame_eta_const;
    std::optional<Rational> potential_eta_unit;
    // Artifact path (relative to the group directory) -> SHA-256 hex.
    std::map<std::string, std::string> artifacts;

    std::string serialize() const;
    static RunManifest parse(const std::string& text);  // throws on bad lines

    bool config_matches(const RunConfig& cfg) const;
    static RunManifest from_config(const RunConfig& cfg);
};

// Load <dir>/manifest.txt if present and well-formed.
std::optional<RunManifest> load_manifest(const std::filesystem::path& group_dir);

// First problem with the artifacts referenced by the manifest (missing file
// or hash mismatch), or nullopt if they all check out.
std::optional<std::string> verify_manifest(const std::filesystem::path& group_dir,
                                           const RunManifest& m);

// --- the cached pipeline ----------------------------------------------------

enum class Stage { Metric, Eta, Flat, Potential };

struct PipelineResult {
    MetricTable gtable;
    MetricTable eta;
    std::optional<FlatFrame> frame;          // stage >= Flat
    std::optional<Potential> potential;      // stage >= Potential
    std::filesystem::path group_dir;
    RunManifest manifest;                    // as written to disk
};

// Runs the pipeline through `upto`, reusing the cached metric artifact when
// it exists, parses, and matches its manifest hash, and writing every stage
// artifact plus the refreshed manifest. Later-stage results are always
// recomputed in memory (they are cheap and self-verifying).
PipelineResult run_pipeline(const RunConfig& cfg, Stage upto);

// Serialization of the stage artifacts (shared by cache writes, fixtures and
// tests). Metric/eta tables: one `degA degB poly` line per upper pair, eta
// omitting zero entries. Frames: one `t<deg> poly` line per coordinate, the
// scale folded in. Potential: the polynomial on a single line.
std::string serialize_metric_entries(const MetricTable& table, bool skip_zero);
std::string serialize_frame(const FlatFrame& frame);
std::string serialize_potential(const Potential& pot);

// Basic-invariant artifacts for one group: file name (e.g. "u6.txt") ->
// canonical chart-ring text. Degree must be an invariant degree of the group;
// passing nullopt selects all of them.
std::map<std::string, std::string> invariant_artifacts(GroupId g,
                                                       std::optional<std::uint32_t> degree);

// Writes invariant artifacts under <cache>/<group>/invariants/ and updates
// the manifest (same reuse/refresh rules as the pipeline stages).
std::filesystem::path write_invariant_artifacts(const RunConfig& cfg,
                                                std::optional<std::uint32_t> degree);

}  // namespace saito
