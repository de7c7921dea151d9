#include <doctest.h>

#include <filesystem>

#include "pianoskill/vision.hpp"
#include "pianoskill/error.hpp"

using namespace pianoskill;

namespace {

std::vector<Image> gradient_frames(int w, int h, int count) {
    std::vector<Image> frames;
    for (int t = 0; t < count; ++t) {
        Image img(w, h, 3);
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                for (int c = 0; c < 3; ++c)
                    img.at(y, x, c) =
                        static_cast<float>(x + t) / static_cast<float>(w + count);
        frames.push_back(std::move(img));
    }
    return frames;
}

} // namespace

TEST_CASE("build_visual_clip without augmentation is deterministic") {
    const auto frames = gradient_frames(160, 120, kFramesPerClip);
    const HandBBox bbox{10, 4, 140, 112};
    const VisionConfig cfg;
    const auto a = build_visual_clip(frames, bbox, cfg, false, nullptr);
    const auto b = build_visual_clip(frames, bbox, cfg, false, nullptr);
    CHECK(a.data == b.data);
    CHECK(a.data.size() == static_cast<std::size_t>(16) * 112 * 112 * 3);
}

TEST_CASE("wrong frame count is rejected") {
    const auto frames = gradient_frames(160, 120, 15);
    CHECK_THROWS_AS(build_visual_clip(frames, HandBBox{0, 0, 160, 120}, VisionConfig{},
                                      false, nullptr),
                    ValidationError);
}

TEST_CASE("flip coherence: all 16 frames flip together") {
    const auto frames = gradient_frames(160, 120, kFramesPerClip);
    const HandBBox bbox{0, 0, 160, 120};
    VisionConfig cfg;
    cfg.flip_probability = 1.0; // force the flip
    Rng rng(3);
    const auto flipped = build_visual_clip(frames, bbox, cfg, true, &rng);
    const auto plain = build_visual_clip(frames, bbox, cfg, false, nullptr);
    for (int t = 0; t < kFramesPerClip; ++t)
        for (int y = 0; y < kVisualSize; y += 7)
            for (int x = 0; x < kVisualSize; x += 5)
                CHECK(flipped.at(t, y, x, 0) ==
                      doctest::Approx(plain.at(t, y, kVisualSize - 1 - x, 0)));
}

TEST_CASE("flip probability 0 never flips, constants are flip-invariant") {
    std::vector<Image> frames;
    for (int t = 0; t < kFramesPerClip; ++t) {
        Image img(128, 128, 3);
        std::fill(img.data.begin(), img.data.end(), 0.25f);
        frames.push_back(std::move(img));
    }
    VisionConfig cfg;
    cfg.flip_probability = 1.0;
    Rng rng(4);
    const auto flipped =
        build_visual_clip(frames, HandBBox{8, 8, 112, 112}, cfg, true, &rng);
    const auto plain =
        build_visual_clip(frames, HandBBox{8, 8, 112, 112}, cfg, false, nullptr);
    CHECK(flipped.data == plain.data);
}

TEST_CASE("augmentation with a fixed seed is reproducible") {
    const auto frames = gradient_frames(160, 120, kFramesPerClip);
    const HandBBox bbox{0, 0, 160, 120};
    const VisionConfig cfg;
    Rng rng_a(99), rng_b(99);
    const auto a = build_visual_clip(frames, bbox, cfg, true, &rng_a);
    const auto b = build_visual_clip(frames, bbox, cfg, true, &rng_b);
    CHECK(a.data == b.data);
}

TEST_CASE("crop errors propagate") {
    const auto frames = gradient_frames(100, 100, kFramesPerClip);
    CHECK_THROWS_AS(build_visual_clip(frames, HandBBox{50, 50, 100, 100}, VisionConfig{},
                                      false, nullptr),
                    ValidationError);
}

TEST_CASE("directory frame source reads zero-padded names") {
    namespace fs = std::filesystem;
    const auto dir = fs::temp_directory_path() / "psk_frames";
    fs::create_directories(dir);
    for (int t = 0; t < 3; ++t) {
        Image img(20, 10, 3);
        std::fill(img.data.begin(), img.data.end(), 0.1f * static_cast<float>(t + 1));
        write_ppm(img, (dir / DirectoryFrameSource::frame_filename(t)).string());
    }
    DirectoryFrameSource source(dir.string());
    CHECK(source.frame_count() == 3);
    CHECK(source.read_frame(2).at(0, 0, 0) == doctest::Approx(0.3f).epsilon(0.01));
    CHECK(DirectoryFrameSource::frame_filename(7) == "0007.ppm");
    CHECK(DirectoryFrameSource::frame_filename(12345) == "12345.ppm");
    fs::remove_all(dir);
}
