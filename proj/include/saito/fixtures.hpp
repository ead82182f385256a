// saito/fixtures.hpp — golden reference tables and comparison diagnostics.
//
// Fixture files live under one root, one subdirectory per group (e6, e7,
// e8): `metric.txt` / `eta.txt` with one `degA degB poly` line per entry
// (eta lists only nonzero entries), `frame.txt` with one `t<deg> poly` line
// per flat coordinate (scale folded in), `potential.txt` holding one
// polynomial. Files are transcriptions of reference tables: the loader
// parses them leniently (printed term order), validates degrees and grading
// against the group's weight system, and treats them as read-only — a
// CHECKSUMS file at the root records a SHA-256 per file so silent edits are
// caught.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "saito/manifest.hpp"

namespace saito {

struct FixtureSet {
    GroupId group;
    // Each field is present iff its file exists; absent files are simply not
    // part of the recorded data for that group.
    std::optional<std::vector<std::vector<Poly>>> metric;  // full symmetric matrix
    std::optional<std::vector<std::vector<Poly>>> eta;     // zeros where unlisted
    std::optional<std::vector<Poly>> frame;
    std::optional<Poly> potential;

    bool empty() const { return !metric && !eta && !frame && !potential; }
};

// Throws std::runtime_error with file/line context on malformed or
// inconsistently graded input.
FixtureSet load_fixtures(GroupId g, const std::filesystem::path& root);

// Exact polynomial comparison; nullopt on a bit-exact match, otherwise a
// message naming the first differing coefficient (canonical term order).
std::optional<std::string> diff_polys(const std::string& label, const Poly& computed,
                                      const Poly& fixture);

// Entry-wise comparisons against the corresponding fixture field; nullopt if
// the field is absent or everything matches.
std::optional<std::string> compare_metric(const FixtureSet& fx, const MetricTable& table);
std::optional<std::string> compare_eta(const FixtureSet& fx, const MetricTable& eta);
std::optional<std::string> compare_frame(const FixtureSet& fx, const FlatFrame& frame);
std::optional<std::string> compare_potential(const FixtureSet& fx, const Potential& pot);

// Recomputes every hash in <root>/CHECKSUMS and checks that the set of .txt
// files under the root equals the recorded set. Returns the first problem,
// or nullopt when the fixture tree is pristine.
std::optional<std::string> verify_fixture_checksums(const std::filesystem::path& root);

}  // namespace saito
