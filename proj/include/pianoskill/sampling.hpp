#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pianoskill/types.hpp"

namespace pianoskill {

inline constexpr int kFramesPerClip = 16;
inline constexpr int kClipsPerSample = 10;
inline constexpr int kFramesPerSample = kFramesPerClip * kClipsPerSample; // 160

/// 16 consecutive video frames; the atomic unit fed to a backbone.
struct ClipSpec {
    long start_frame = 0;
    int length = kFramesPerClip;

    bool operator==(const ClipSpec&) const = default;
};

/// Ten clips totaling 160 frames; the unit of classification.
struct SampleSpec {
    std::string performance_id;
    int sample_index = 0;
    SamplingScheme scheme = SamplingScheme::Contiguous;
    std::vector<ClipSpec> clips; // exactly kClipsPerSample, ascending start

    bool operator==(const SampleSpec&) const = default;
};

/// Number of unique, non-overlapping 160-frame samples in a performance.
/// Identical for both sampling schemes.
long count_samples(long frame_count);

/// Lays out the N samples of a performance under the given scheme.
///
/// Contiguous: sample i occupies one unbroken 160-frame window; clip j
/// starts at i*160 + j*16.
///
/// UniformlyDistributed: the first N*160 frames split into 10 consecutive
/// segments of N*16 frames; sample i's clip j starts at j*(N*16) + i*16, so
/// every sample's clips span the whole usable duration while samples stay
/// pairwise disjoint.
std::vector<SampleSpec> enumerate_samples(const std::string& performance_id,
                                          long frame_count,
                                          SamplingScheme scheme);

std::vector<SampleSpec> enumerate_samples(const PerformanceRecord& perf,
                                          SamplingScheme scheme);

/// Time-aligned audio window of a clip: (start_seconds, duration_seconds).
std::pair<double, double> audio_window(const ClipSpec& clip, double fps);

} // namespace pianoskill
