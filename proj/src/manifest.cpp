#include "pianoskill/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pianoskill/error.hpp"
#include "pianoskill/sampling.hpp"

namespace pianoskill {

using nlohmann::json;

namespace {

const std::set<std::string> kRecordKeys = {
    "id",   "video",        "frame_count", "fps",  "audio", "audio_sample_rate",
    "player_level", "song_level", "song_name", "bbox", "split"};

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!allowed.count(item.key()))
            throw ValidationError("unknown key \"" + item.key() + "\" in " + where);
    }
}

template <typename T>
T require(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw ValidationError("missing key \"" + key + "\" in " + where);
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ValidationError("bad value for \"" + key + "\" in " + where + ": " +
                              e.what());
    }
}

PerformanceRecord record_from_json(const json& obj, std::size_t index) {
    const std::string where = "record #" + std::to_string(index);
    if (!obj.is_object())
        throw ValidationError(where + " is not an object");
    reject_unknown_keys(obj, kRecordKeys, where);

    PerformanceRecord rec;
    rec.id = require<std::string>(obj, "id", where);
    const std::string named = "record \"" + rec.id + "\"";
    rec.video_uri = require<std::string>(obj, "video", named);
    rec.frame_count = require<long>(obj, "frame_count", named);
    rec.fps = obj.contains("fps") ? require<double>(obj, "fps", named) : 30.0;
    rec.audio_uri = require<std::string>(obj, "audio", named);
    rec.audio_sample_rate = require<long>(obj, "audio_sample_rate", named);
    rec.player_level = PlayerLevel::checked(require<int>(obj, "player_level", named));
    rec.song_level = SongLevel::checked(require<int>(obj, "song_level", named));
    rec.song_name = require<std::string>(obj, "song_name", named);
    const auto bbox = require<std::vector<int>>(obj, "bbox", named);
    if (bbox.size() != 4)
        throw ValidationError(named + ": bbox must be 4 integers x,y,w,h");
    rec.hand_bbox = HandBBox{bbox[0], bbox[1], bbox[2], bbox[3]};
    rec.split = split_from_string(require<std::string>(obj, "split", named));
    return rec;
}

void validate_record(const PerformanceRecord& rec) {
    const std::string named = "record \"" + rec.id + "\"";
    if (rec.id.empty()) throw ValidationError("record with empty id");
    if (rec.frame_count < 1)
        throw ValidationError(named + ": frame_count must be >= 1");
    if (rec.fps <= 0.0) throw ValidationError(named + ": fps must be positive");
    if (rec.audio_sample_rate <= 0)
        throw ValidationError(named + ": audio_sample_rate must be positive");
    PlayerLevel::checked(rec.player_level.value);
    SongLevel::checked(rec.song_level.value);
    if (rec.hand_bbox.w <= 0 || rec.hand_bbox.h <= 0)
        throw ValidationError(named + ": bbox extents must be positive");
    if (rec.hand_bbox.x < 0 || rec.hand_bbox.y < 0)
        throw ValidationError(named + ": bbox origin must be non-negative");
}

} // namespace

void validate_manifest(const DatasetManifest& manifest) {
    std::set<std::string> ids;
    for (const auto& rec : manifest.records) {
        validate_record(rec);
        if (!ids.insert(rec.id).second)
            throw ValidationError("duplicate record id \"" + rec.id + "\"");
    }
    // Split disjointness is id-level; duplicate ids are already rejected, so
    // a performance cannot appear in both splits under distinct entries.
}

DatasetManifest parse_manifest(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest parse error: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("manifest root must be an object");
    reject_unknown_keys(doc, {"records", "scheme"}, "manifest root");
    if (!doc.contains("records") || !doc.at("records").is_array())
        throw ValidationError("manifest must contain a \"records\" array");

    DatasetManifest manifest;
    if (doc.contains("scheme"))
        manifest.scheme = scheme_from_string(require<std::string>(doc, "scheme", "manifest root"));
    std::size_t index = 0;
    for (const auto& item : doc.at("records"))
        manifest.records.push_back(record_from_json(item, index++));
    validate_manifest(manifest);
    return manifest;
}

DatasetManifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open manifest: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_manifest(ss.str());
}

std::string manifest_to_string(const DatasetManifest& manifest) {
    json doc;
    doc["scheme"] = to_string(manifest.scheme);
    doc["records"] = json::array();
    for (const auto& rec : manifest.records) {
        json obj;
        obj["id"] = rec.id;
        obj["video"] = rec.video_uri;
        obj["frame_count"] = rec.frame_count;
        obj["fps"] = rec.fps;
        obj["audio"] = rec.audio_uri;
        obj["audio_sample_rate"] = rec.audio_sample_rate;
        obj["player_level"] = rec.player_level.value;
        obj["song_level"] = rec.song_level.value;
        obj["song_name"] = rec.song_name;
        obj["bbox"] = {rec.hand_bbox.x, rec.hand_bbox.y, rec.hand_bbox.w,
                       rec.hand_bbox.h};
        obj["split"] = to_string(rec.split);
        doc["records"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

void save_manifest(const DatasetManifest& manifest, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write manifest: " + path);
    out << manifest_to_string(manifest);
    if (!out) throw IoError("failed writing manifest: " + path);
}

SummaryReport dataset_summary(const DatasetManifest& manifest) {
    if (manifest.records.empty())
        throw ValidationError("dataset_summary requires a non-empty manifest");

    SummaryReport r;
    r.performances = static_cast<long>(manifest.records.size());
    r.min_frames = manifest.records.front().frame_count;
    r.max_frames = r.min_frames;
    double sum = 0.0;
    for (const auto& rec : manifest.records) {
        r.min_frames = std::min(r.min_frames, rec.frame_count);
        r.max_frames = std::max(r.max_frames, rec.frame_count);
        sum += static_cast<double>(rec.frame_count);
        const long samples = count_samples(rec.frame_count);
        if (rec.split == Split::Train) {
            ++r.train_performances;
            r.train_samples += samples;
        } else {
            ++r.test_performances;
            r.test_samples += samples;
        }
        ++r.player_level_hist[static_cast<std::size_t>(rec.player_level.value - 1)];
        ++r.song_level_hist[static_cast<std::size_t>(rec.song_level.value - 1)];
    }
    r.mean_frames = sum / static_cast<double>(r.performances);
    r.total_samples = r.train_samples + r.test_samples;
    return r;
}

std::string SummaryReport::to_text() const {
    std::ostringstream os;
    os << "performances: " << performances << " (train " << train_performances
       << ", test " << test_performances << ")\n";
    os << "frames: min " << min_frames << ", mean " << mean_frames << ", max "
       << max_frames << "\n";
    os << "samples: total " << total_samples << " (train " << train_samples
       << ", test " << test_samples << ")\n";
    os << "player-level histogram:";
    for (int i = 0; i < kNumLevels; ++i)
        os << " " << (i + 1) << ":" << player_level_hist[static_cast<std::size_t>(i)];
    os << "\nsong-level histogram:  ";
    for (int i = 0; i < kNumLevels; ++i)
        os << " " << (i + 1) << ":" << song_level_hist[static_cast<std::size_t>(i)];
    os << "\n";
    return os.str();
}

} // namespace pianoskill
