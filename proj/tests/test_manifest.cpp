#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pianoskill/manifest.hpp"
#include "pianoskill/rng.hpp"

using namespace pianoskill;

namespace {

std::string minimal_record(const std::string& id, long frames, const std::string& split,
                           int player_level = 3) {
    return R"({"id": ")" + id + R"(", "video": "frames/)" + id +
           R"(", "frame_count": )" + std::to_string(frames) +
           R"(, "fps": 30.0, "audio": "audio/)" + id +
           R"(.wav", "audio_sample_rate": 22050, "player_level": )" +
           std::to_string(player_level) +
           R"(, "song_level": 2, "song_name": "etude", "bbox": [0, 0, 112, 112], "split": ")" +
           split + R"("})";
}

} // namespace

TEST_CASE("minimal valid manifest loads") {
    const auto m =
        parse_manifest(R"({"records": [)" + minimal_record("p1", 570, "train") + "]}");
    REQUIRE(m.records.size() == 1);
    CHECK(m.records[0].frame_count == 570);
    CHECK(m.records[0].split == Split::Train);
    CHECK(m.records[0].fps == doctest::Approx(30.0));
}

TEST_CASE("comments are allowed in manifest files") {
    const auto m = parse_manifest("// commented example\n{\"records\": [" +
                                  minimal_record("p1", 570, "train") + "]}");
    CHECK(m.records.size() == 1);
}

TEST_CASE("duplicate id rejected, naming the record") {
    const std::string doc = R"({"records": [)" + minimal_record("p1", 570, "train") +
                            "," + minimal_record("p1", 570, "test") + "]}";
    CHECK_THROWS_WITH_AS(parse_manifest(doc), doctest::Contains("p1"), ValidationError);
}

TEST_CASE("player_level out of range rejected") {
    const std::string doc =
        R"({"records": [)" + minimal_record("p1", 570, "train", 11) + "]}";
    CHECK_THROWS_WITH_AS(parse_manifest(doc), doctest::Contains("1-10"), ValidationError);
}

TEST_CASE("unknown keys rejected") {
    CHECK_THROWS_AS(parse_manifest(R"({"records": [], "extra": 1})"), ValidationError);
    std::string rec = minimal_record("p1", 570, "train");
    rec.insert(rec.size() - 1, R"(, "surprise": true)");
    CHECK_THROWS_AS(parse_manifest(R"({"records": [)" + rec + "]}"), ValidationError);
}

TEST_CASE("malformed document is a parse error") {
    CHECK_THROWS_AS(parse_manifest("{records: oops"), ParseError);
}

TEST_CASE("fps defaults to 30 when absent") {
    std::string rec = minimal_record("p1", 570, "train");
    const auto pos = rec.find(R"("fps": 30.0, )");
    rec.erase(pos, std::string(R"("fps": 30.0, )").size());
    const auto m = parse_manifest(R"({"records": [)" + rec + "]}");
    CHECK(m.records[0].fps == doctest::Approx(30.0));
}

TEST_CASE("manifest round-trips through save/load") {
    Rng rng(11);
    DatasetManifest m;
    m.scheme = SamplingScheme::UniformlyDistributed;
    for (int i = 0; i < 12; ++i) {
        PerformanceRecord r;
        r.id = "perf" + std::to_string(i);
        r.video_uri = "frames/" + r.id;
        r.frame_count = 160 + static_cast<long>(rng.uniform_int(5000));
        r.fps = 30.0;
        r.audio_uri = "audio/" + r.id + ".wav";
        r.audio_sample_rate = 22050;
        r.player_level = PlayerLevel::checked(1 + static_cast<int>(rng.uniform_int(10)));
        r.song_level = SongLevel::checked(1 + static_cast<int>(rng.uniform_int(10)));
        r.song_name = "song " + std::to_string(i);
        r.hand_bbox = HandBBox{static_cast<int>(rng.uniform_int(100)),
                               static_cast<int>(rng.uniform_int(100)),
                               112 + static_cast<int>(rng.uniform_int(500)),
                               112 + static_cast<int>(rng.uniform_int(300))};
        r.split = rng.coin(0.5) ? Split::Train : Split::Test;
        m.records.push_back(std::move(r));
    }
    const auto path = std::filesystem::temp_directory_path() / "psk_manifest_rt.json";
    save_manifest(m, path.string());
    const auto loaded = load_manifest(path.string());
    CHECK(loaded == m);
    std::filesystem::remove(path);
}

TEST_CASE("summary reports frame statistics and split accounting") {
    DatasetManifest m;
    int idx = 0;
    for (const long frames : {570L, 2690L, 10038L}) {
        PerformanceRecord r;
        r.id = "p" + std::to_string(idx);
        r.video_uri = "v";
        r.frame_count = frames;
        r.audio_uri = "a";
        r.audio_sample_rate = 22050;
        r.player_level = PlayerLevel::checked(idx + 1);
        r.song_level = SongLevel::checked(5);
        r.song_name = "s";
        r.hand_bbox = HandBBox{0, 0, 10, 10};
        r.split = idx < 2 ? Split::Train : Split::Test;
        m.records.push_back(std::move(r));
        ++idx;
    }
    const auto s = dataset_summary(m);
    CHECK(s.min_frames == 570);
    CHECK(s.max_frames == 10038);
    CHECK(s.mean_frames == doctest::Approx(4432.67).epsilon(1e-5));
    CHECK(s.train_performances == 2);
    CHECK(s.test_performances == 1);
    CHECK(s.train_samples == 3 + 16);
    CHECK(s.test_samples == 62);
    CHECK(s.player_level_hist[0] == 1);
    CHECK(s.song_level_hist[4] == 3);
}

TEST_CASE("summary of a single minimal record") {
    const auto m =
        parse_manifest(R"({"records": [)" + minimal_record("p1", 160, "train") + "]}");
    const auto s = dataset_summary(m);
    CHECK(s.min_frames == 160);
    CHECK(s.max_frames == 160);
    CHECK(s.mean_frames == doctest::Approx(160.0));
    CHECK(s.total_samples == 1);
}

TEST_CASE("summary rejects an empty manifest") {
    CHECK_THROWS_AS(dataset_summary(DatasetManifest{}), ValidationError);
}
