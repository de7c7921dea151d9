#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pianoskill/types.hpp"

namespace pianoskill {

enum class CueType { Global, Localized };

std::string to_string(CueType c);
CueType cue_from_string(const std::string& s);

/// Recipe for a desk-scale dataset whose media encode the player level in
/// plainly separable visual and aural cues: a pattern scrolling at a speed
/// monotone in level, and a tone whose frequency and pulse rate are
/// monotone in level. `Localized` confines the informative cue to one
/// random contiguous fraction of each performance.
struct SyntheticSpec {
    std::vector<int> levels = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int train_per_level = 2;
    int test_per_level = 1;
    long frame_count = 640;
    int frame_width = 128;
    int frame_height = 128;
    double fps = 30.0;
    long audio_sample_rate = 22050;
    CueType cue = CueType::Global;
    // pattern speed in px/frame at level L: base * ratio^(L-1)
    double base_speed = 1.3;
    double speed_ratio = 1.3;
    double base_tone_hz = 180.0; // tone frequency = base * L
    double localized_fraction = 0.2;
    std::uint64_t seed = 7;

    void validate() const;
    double speed_for_level(int level) const;
    double tone_for_level(int level) const;
};

/// Renders frames (PPM) and audio (WAV) for every performance under
/// out_dir and writes out_dir/manifest.json. Same spec -> byte-identical
/// media. Returns the manifest.
DatasetManifest generate_synthetic(const SyntheticSpec& spec, const std::string& out_dir);

} // namespace pianoskill
