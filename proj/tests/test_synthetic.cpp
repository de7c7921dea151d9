#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pianoskill/audio.hpp"
#include "pianoskill/manifest.hpp"
#include "pianoskill/synthetic.hpp"
#include "pianoskill/vision.hpp"
#include "pianoskill/wav.hpp"

using namespace pianoskill;
namespace fs = std::filesystem;

namespace {

SyntheticSpec tiny_spec() {
    SyntheticSpec spec;
    spec.levels = {2, 7};
    spec.train_per_level = 1;
    spec.test_per_level = 1;
    spec.frame_count = 160;
    spec.seed = 21;
    return spec;
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("generator writes a valid manifest with expected accounting") {
    const auto dir = fs::temp_directory_path() / "psk_synth_a";
    fs::remove_all(dir);
    SyntheticSpec spec = tiny_spec();
    spec.frame_count = 640;
    const auto manifest = generate_synthetic(spec, dir.string());
    CHECK(manifest.records.size() == 4); // 2 levels x (1 train + 1 test)
    const auto loaded = load_manifest((dir / "manifest.json").string());
    CHECK(loaded.records.size() == 4);
    const auto summary = dataset_summary(loaded);
    CHECK(summary.total_samples == 4 * 4); // floor(640/160) per record
    CHECK(summary.train_performances == 2);
    CHECK(summary.test_performances == 2);

    // media exist and have the declared geometry
    for (const auto& rec : loaded.records) {
        DirectoryFrameSource frames((dir / rec.video_uri).string());
        const auto frame = frames.read_frame(0);
        CHECK(frame.width == spec.frame_width);
        CHECK(frame.height == spec.frame_height);
        const auto audio = read_wav((dir / rec.audio_uri).string());
        CHECK(audio.sample_rate == spec.audio_sample_rate);
        CHECK(audio.duration_seconds() >=
              static_cast<double>(rec.frame_count) / rec.fps - 1e-9);
    }
    fs::remove_all(dir);
}

TEST_CASE("tone frequency encodes the level, detectable via the mel path") {
    const auto dir = fs::temp_directory_path() / "psk_synth_b";
    fs::remove_all(dir);
    const SyntheticSpec spec = tiny_spec();
    const auto manifest = generate_synthetic(spec, dir.string());

    MelSpectrogramParams params;
    auto dominant_band = [&](const PerformanceRecord& rec) {
        const auto audio = read_wav((dir / rec.audio_uri).string());
        AudioWindow w;
        w.sample_rate = audio.sample_rate;
        w.samples.assign(audio.samples.begin(), audio.samples.begin() + 11760);
        const auto mel = melspectrogram(w, params);
        int best = 0;
        double best_v = -1.0;
        for (int m = 0; m < mel.n_mels; ++m) {
            double s = 0.0;
            for (int t = 0; t < mel.n_frames; ++t) s += mel.at(m, t);
            if (s > best_v) { best_v = s; best = m; }
        }
        return best;
    };

    int band_lo = -1, band_hi = -1;
    for (const auto& rec : manifest.records) {
        if (rec.split != Split::Train) continue;
        if (rec.player_level.value == 2) band_lo = dominant_band(rec);
        if (rec.player_level.value == 7) band_hi = dominant_band(rec);
    }
    REQUIRE(band_lo >= 0);
    REQUIRE(band_hi >= 0);
    CHECK(band_hi > band_lo); // higher level -> higher tone -> higher mel band
    fs::remove_all(dir);
}

TEST_CASE("same seed gives byte-identical media") {
    const auto dir_a = fs::temp_directory_path() / "psk_synth_c1";
    const auto dir_b = fs::temp_directory_path() / "psk_synth_c2";
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
    const SyntheticSpec spec = tiny_spec();
    generate_synthetic(spec, dir_a.string());
    generate_synthetic(spec, dir_b.string());
    const auto rel_frame = fs::path("frames/lv02_tr0/0000.ppm");
    const auto rel_wav = fs::path("audio/lv07_te0.wav");
    CHECK(slurp(dir_a / rel_frame) == slurp(dir_b / rel_frame));
    CHECK(slurp(dir_a / rel_wav) == slurp(dir_b / rel_wav));
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("localized cue confines the informative segment") {
    SyntheticSpec spec = tiny_spec();
    spec.cue = CueType::Localized;
    spec.frame_count = 320;
    const auto dir = fs::temp_directory_path() / "psk_synth_d";
    fs::remove_all(dir);
    const auto manifest = generate_synthetic(spec, dir.string());
    CHECK(manifest.records.size() == 4);
    fs::remove_all(dir);
}

TEST_CASE("spec validation rejects non-monotone cues") {
    SyntheticSpec spec = tiny_spec();
    spec.speed_ratio = 1.0;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = tiny_spec();
    spec.levels = {3, 3};
    CHECK_THROWS_AS(spec.validate(), ValidationError);
    spec = tiny_spec();
    spec.frame_count = 100;
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}
