#include "pianoskill/sampling.hpp"

#include "pianoskill/error.hpp"

namespace pianoskill {

std::string to_string(Split s) {
    return s == Split::Train ? "train" : "test";
}

Split split_from_string(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "test") return Split::Test;
    throw ValidationError("unknown split \"" + s + "\" (expected train|test)");
}

std::string to_string(SamplingScheme s) {
    return s == SamplingScheme::Contiguous ? "contiguous" : "uniform";
}

SamplingScheme scheme_from_string(const std::string& s) {
    if (s == "contiguous") return SamplingScheme::Contiguous;
    if (s == "uniform" || s == "uniformly_distributed")
        return SamplingScheme::UniformlyDistributed;
    throw ValidationError("unknown sampling scheme \"" + s +
                          "\" (expected contiguous|uniform)");
}

long count_samples(long frame_count) {
    if (frame_count < 0) return 0;
    return frame_count / kFramesPerSample;
}

std::vector<SampleSpec> enumerate_samples(const std::string& performance_id,
                                          long frame_count,
                                          SamplingScheme scheme) {
    const long n = count_samples(frame_count);
    std::vector<SampleSpec> samples;
    samples.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        SampleSpec s;
        s.performance_id = performance_id;
        s.sample_index = static_cast<int>(i);
        s.scheme = scheme;
        s.clips.reserve(kClipsPerSample);
        for (int j = 0; j < kClipsPerSample; ++j) {
            long start = 0;
            if (scheme == SamplingScheme::Contiguous) {
                start = i * kFramesPerSample + j * kFramesPerClip;
            } else {
                const long segment = n * kFramesPerClip;
                start = j * segment + i * kFramesPerClip;
            }
            s.clips.push_back(ClipSpec{start, kFramesPerClip});
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

std::vector<SampleSpec> enumerate_samples(const PerformanceRecord& perf,
                                          SamplingScheme scheme) {
    return enumerate_samples(perf.id, perf.frame_count, scheme);
}

std::pair<double, double> audio_window(const ClipSpec& clip, double fps) {
    if (fps <= 0.0)
        throw ValidationError("fps must be positive, got " + std::to_string(fps));
    return {static_cast<double>(clip.start_frame) / fps,
            static_cast<double>(clip.length) / fps};
}

} // namespace pianoskill
