#pragma once

#include <array>
#include <string>

#include "pianoskill/types.hpp"

namespace pianoskill {

/// Parses and validates a manifest file. Comments (// and /* */) are
/// allowed in the file so the bundled example can be annotated.
/// Unknown keys are rejected; every documented invariant is enforced.
DatasetManifest load_manifest(const std::string& path);

/// Same, from an in-memory document.
DatasetManifest parse_manifest(const std::string& text);

/// Checks all manifest invariants (id uniqueness, level ranges, bbox
/// extents, split disjointness). Throws ValidationError naming the
/// offending record and field.
void validate_manifest(const DatasetManifest& manifest);

/// Serializes back to the manifest schema; load(save(m)) == m.
std::string manifest_to_string(const DatasetManifest& manifest);
void save_manifest(const DatasetManifest& manifest, const std::string& path);

struct SummaryReport {
    long performances = 0;
    long min_frames = 0;
    long max_frames = 0;
    double mean_frames = 0.0;
    long train_performances = 0;
    long test_performances = 0;
    long train_samples = 0;
    long test_samples = 0;
    long total_samples = 0;
    std::array<long, kNumLevels> player_level_hist{};
    std::array<long, kNumLevels> song_level_hist{};

    std::string to_text() const;
};

/// Frame statistics, per-split performance/sample counts and level
/// histograms for a non-empty manifest.
SummaryReport dataset_summary(const DatasetManifest& manifest);

} // namespace pianoskill
