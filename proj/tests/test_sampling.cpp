#include <doctest.h>

#include <set>

#include "pianoskill/sampling.hpp"

using namespace pianoskill;

namespace {

std::set<long> frames_used(const std::vector<SampleSpec>& samples) {
    std::set<long> used;
    for (const auto& s : samples)
        for (const auto& c : s.clips)
            for (long f = c.start_frame; f < c.start_frame + c.length; ++f)
                REQUIRE(used.insert(f).second); // disjointness
    return used;
}

} // namespace

TEST_CASE("count_samples floors to whole 160-frame samples") {
    CHECK(count_samples(570) == 3);
    CHECK(count_samples(159) == 0);
    CHECK(count_samples(160) == 1);
    CHECK(count_samples(10038) == 62);
    CHECK(count_samples(0) == 0);
}

TEST_CASE("contiguous layout: sample 0 clip starts") {
    const auto samples = enumerate_samples("p", 570, SamplingScheme::Contiguous);
    REQUIRE(samples.size() == 3);
    const std::vector<long> expected = {0, 16, 32, 48, 64, 80, 96, 112, 128, 144};
    for (int j = 0; j < kClipsPerSample; ++j)
        CHECK(samples[0].clips[static_cast<std::size_t>(j)].start_frame ==
              expected[static_cast<std::size_t>(j)]);
}

TEST_CASE("uniform layout: segment/offset construction") {
    const auto samples = enumerate_samples("p", 570, SamplingScheme::UniformlyDistributed);
    REQUIRE(samples.size() == 3);
    // N=3: clip j of sample i starts at j*48 + i*16
    CHECK(samples[1].clips[2].start_frame == 2 * 48 + 16);
    CHECK(samples[0].clips[0].start_frame == 0);
    CHECK(samples[2].clips[9].start_frame == 9 * 48 + 2 * 16);
}

TEST_CASE("disjointness and exact coverage for both schemes") {
    for (const long frame_count : {0L, 159L, 160L, 161L, 570L, 2690L, 4000L}) {
        for (const auto scheme :
             {SamplingScheme::Contiguous, SamplingScheme::UniformlyDistributed}) {
            const auto samples = enumerate_samples("p", frame_count, scheme);
            const long n = count_samples(frame_count);
            CHECK(static_cast<long>(samples.size()) == n);
            for (const auto& s : samples) {
                REQUIRE(s.clips.size() == kClipsPerSample);
                for (std::size_t j = 1; j < s.clips.size(); ++j)
                    CHECK(s.clips[j].start_frame > s.clips[j - 1].start_frame);
            }
            const auto used = frames_used(samples);
            CHECK(static_cast<long>(used.size()) == n * kFramesPerSample);
            if (n > 0) {
                CHECK(*used.begin() == 0);
                CHECK(*used.rbegin() == n * kFramesPerSample - 1);
            }
        }
    }
}

TEST_CASE("span: uniform samples cover all segments, contiguous stay in one window") {
    const long frame_count = 4 * kFramesPerSample;
    const auto uniform =
        enumerate_samples("p", frame_count, SamplingScheme::UniformlyDistributed);
    for (const auto& s : uniform) {
        const long segment = 4 * kFramesPerClip;
        std::set<long> segments_hit;
        for (const auto& c : s.clips) segments_hit.insert(c.start_frame / segment);
        CHECK(segments_hit.size() == kClipsPerSample);
    }
    const auto contiguous = enumerate_samples("p", frame_count, SamplingScheme::Contiguous);
    for (const auto& s : contiguous) {
        const long lo = static_cast<long>(s.sample_index) * kFramesPerSample;
        for (const auto& c : s.clips) {
            CHECK(c.start_frame >= lo);
            CHECK(c.start_frame + c.length <= lo + kFramesPerSample);
        }
    }
}

TEST_CASE("enumerate_samples is deterministic") {
    const auto a = enumerate_samples("p", 2690, SamplingScheme::UniformlyDistributed);
    const auto b = enumerate_samples("p", 2690, SamplingScheme::UniformlyDistributed);
    CHECK(a == b);
}

TEST_CASE("audio_window maps clips to seconds") {
    const auto [s0, d0] = audio_window(ClipSpec{0, 16}, 30.0);
    CHECK(s0 == doctest::Approx(0.0));
    CHECK(d0 == doctest::Approx(16.0 / 30.0));

    const auto [s1, d1] = audio_window(ClipSpec{30, 16}, 30.0);
    CHECK(s1 == doctest::Approx(1.0));
    CHECK(d1 == doctest::Approx(16.0 / 30.0));

    const auto [s2, d2] = audio_window(ClipSpec{112, 16}, 30.0);
    CHECK(s2 == doctest::Approx(112.0 / 30.0));
    CHECK(d2 == doctest::Approx(16.0 / 30.0));

    CHECK_THROWS_AS(audio_window(ClipSpec{0, 16}, 0.0), ValidationError);
}
