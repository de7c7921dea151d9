#pragma once

#include <string>
#include <vector>

namespace pianoskill {

struct AudioBuffer {
    std::vector<double> samples; // mono, [-1, 1]
    long sample_rate = 0;

    double duration_seconds() const {
        return sample_rate > 0
                   ? static_cast<double>(samples.size()) / static_cast<double>(sample_rate)
                   : 0.0;
    }
};

/// Reads a PCM wave file (16-bit integer or 32-bit float). Multi-channel
/// input is downmixed to mono by averaging.
AudioBuffer read_wav(const std::string& path);

/// Writes mono 16-bit PCM.
void write_wav(const AudioBuffer& audio, const std::string& path);

/// Linear-interpolation resampler.
AudioBuffer resample_linear(const AudioBuffer& audio, long target_rate);

} // namespace pianoskill
