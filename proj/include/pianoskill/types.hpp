#pragma once

#include <string>
#include <vector>

#include "pianoskill/error.hpp"

namespace pianoskill {

inline constexpr int kMinLevel = 1;
inline constexpr int kMaxLevel = 10;
inline constexpr int kNumLevels = 10;

/// 1-10 integer grade of a pianist's skill; the prediction target.
struct PlayerLevel {
    int value = kMinLevel;

    static PlayerLevel checked(int v) {
        if (v < kMinLevel || v > kMaxLevel)
            throw ValidationError("player_level " + std::to_string(v) +
                                  " outside range 1-10");
        return PlayerLevel{v};
    }
    bool operator==(const PlayerLevel&) const = default;
};

/// 1-10 integer difficulty grade of the piece; annotation only.
struct SongLevel {
    int value = kMinLevel;

    static SongLevel checked(int v) {
        if (v < kMinLevel || v > kMaxLevel)
            throw ValidationError("song_level " + std::to_string(v) +
                                  " outside range 1-10");
        return SongLevel{v};
    }
    bool operator==(const SongLevel&) const = default;
};

/// Static axis-aligned box around the pianist's hands, one per performance.
struct HandBBox {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool operator==(const HandBBox&) const = default;
};

enum class Split { Train, Test };

std::string to_string(Split s);
Split split_from_string(const std::string& s);

enum class SamplingScheme { Contiguous, UniformlyDistributed };

std::string to_string(SamplingScheme s);
SamplingScheme scheme_from_string(const std::string& s);

/// One full recorded performance: media references, geometry, annotations.
struct PerformanceRecord {
    std::string id;
    std::string video_uri;   // directory of zero-padded numbered frame images
    long frame_count = 0;
    double fps = 30.0;
    std::string audio_uri;   // PCM wave file
    long audio_sample_rate = 0;
    PlayerLevel player_level;
    SongLevel song_level;
    std::string song_name;
    HandBBox hand_bbox;
    Split split = Split::Train;

    bool operator==(const PerformanceRecord&) const = default;
};

struct DatasetManifest {
    std::vector<PerformanceRecord> records;
    SamplingScheme scheme = SamplingScheme::Contiguous;

    bool operator==(const DatasetManifest&) const = default;
};

} // namespace pianoskill
