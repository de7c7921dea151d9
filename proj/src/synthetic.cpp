#include "pianoskill/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "pianoskill/error.hpp"
#include "pianoskill/image.hpp"
#include "pianoskill/manifest.hpp"
#include "pianoskill/rng.hpp"
#include "pianoskill/sampling.hpp"
#include "pianoskill/vision.hpp"
#include "pianoskill/wav.hpp"

namespace pianoskill {

namespace fs = std::filesystem;

std::string to_string(CueType c) {
    return c == CueType::Global ? "global" : "localized";
}

CueType cue_from_string(const std::string& s) {
    if (s == "global") return CueType::Global;
    if (s == "localized") return CueType::Localized;
    throw ValidationError("unknown cue type \"" + s + "\" (expected global|localized)");
}

void SyntheticSpec::validate() const {
    if (levels.empty()) throw ValidationError("synthetic spec: no levels");
    for (std::size_t i = 0; i < levels.size(); ++i) {
        PlayerLevel::checked(levels[i]);
        if (i > 0 && levels[i] <= levels[i - 1])
            throw ValidationError("synthetic spec: levels must be strictly increasing");
    }
    if (train_per_level < 0 || test_per_level < 0 ||
        train_per_level + test_per_level == 0)
        throw ValidationError("synthetic spec: need at least one performance per level");
    if (frame_count < kFramesPerSample)
        throw ValidationError("synthetic spec: frame_count below one sample (160)");
    if (frame_width < kVisualSize || frame_height < kVisualSize)
        throw ValidationError("synthetic spec: frame geometry too small");
    if (fps <= 0.0 || audio_sample_rate <= 0)
        throw ValidationError("synthetic spec: fps and sample rate must be positive");
    if (base_speed <= 0.0 || speed_ratio <= 1.0)
        throw ValidationError("synthetic spec: speed cue must be strictly monotone");
    if (base_tone_hz <= 0.0)
        throw ValidationError("synthetic spec: tone cue must be strictly monotone");
    if (tone_for_level(levels.back()) >= static_cast<double>(audio_sample_rate) / 2.0)
        throw ValidationError("synthetic spec: top tone exceeds Nyquist");
    if (localized_fraction <= 0.0 || localized_fraction >= 1.0)
        throw ValidationError("synthetic spec: localized_fraction must be in (0,1)");
}

double SyntheticSpec::speed_for_level(int level) const {
    return base_speed * std::pow(speed_ratio, level - 1);
}

double SyntheticSpec::tone_for_level(int level) const {
    return base_tone_hz * level;
}

namespace {

constexpr double kWavelengthPx = 32.0;
// filler cue used outside the informative segment in localized mode;
// shared by all levels so it carries no skill information
constexpr double kFillerSpeed = 0.6;
constexpr double kFillerToneHz = 100.0;
constexpr double kFillerNoteRate = 2.0;

double note_rate_for_level(int level) { return 1.5 + 0.5 * level; }

struct CueSchedule {
    long cue_begin = 0; // frame index range carrying the informative cue
    long cue_end = 0;

    bool informative(long frame) const { return frame >= cue_begin && frame < cue_end; }
};

void render_performance_frames(const SyntheticSpec& spec, const CueSchedule& schedule,
                               double level_speed, const std::string& dir,
                               Rng& rng) {
    const double phase = rng.uniform(0.0, kWavelengthPx);
    const double blob_phase = rng.uniform(0.0, 2.0 * M_PI);
    const int blob_size = std::max(8, spec.frame_width / 8);

    Image frame(spec.frame_width, spec.frame_height, 3);
    double scroll = phase; // accumulated pattern displacement
    std::vector<float> row(static_cast<std::size_t>(spec.frame_width));
    for (long t = 0; t < spec.frame_count; ++t) {
        const double speed = schedule.informative(t) ? level_speed : kFillerSpeed;
        scroll += speed;
        for (int x = 0; x < spec.frame_width; ++x)
            row[static_cast<std::size_t>(x)] = static_cast<float>(
                0.5 + 0.35 * std::sin(2.0 * M_PI * (x + scroll) / kWavelengthPx));

        // moving bright blob bouncing along both axes at the cue speed
        const double travel_x = spec.frame_width - blob_size;
        const double travel_y = spec.frame_height - blob_size;
        const double pos = scroll * 0.5 + blob_phase * 3.0;
        const double frac_x = std::fabs(std::fmod(pos / travel_x, 2.0) - 1.0);
        const double frac_y = std::fabs(std::fmod(pos / (1.7 * travel_y), 2.0) - 1.0);
        const int bx = static_cast<int>(frac_x * travel_x);
        const int by = static_cast<int>(frac_y * travel_y);

        for (int y = 0; y < spec.frame_height; ++y) {
            for (int x = 0; x < spec.frame_width; ++x) {
                float v = row[static_cast<std::size_t>(x)];
                if (x >= bx && x < bx + blob_size && y >= by && y < by + blob_size)
                    v = std::min(1.0f, v + 0.4f);
                v += static_cast<float>(0.03 * (rng.uniform() - 0.5));
                v = std::clamp(v, 0.0f, 1.0f);
                frame.at(y, x, 0) = v;
                frame.at(y, x, 1) = v;
                frame.at(y, x, 2) = v;
            }
        }
        write_ppm(frame, dir + "/" + DirectoryFrameSource::frame_filename(t));
    }
}

void render_performance_audio(const SyntheticSpec& spec, const CueSchedule& schedule,
                              int level, const std::string& path, Rng& rng) {
    const double duration = static_cast<double>(spec.frame_count) / spec.fps;
    const long n = std::lround(duration * static_cast<double>(spec.audio_sample_rate));
    const double phase = rng.uniform(0.0, 2.0 * M_PI);

    AudioBuffer buf;
    buf.sample_rate = spec.audio_sample_rate;
    buf.samples.resize(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / spec.audio_sample_rate;
        const long frame = std::min(static_cast<long>(t * spec.fps), spec.frame_count - 1);
        const bool inf = schedule.informative(frame);
        const double tone = inf ? spec.tone_for_level(level) : kFillerToneHz;
        const double rate = inf ? note_rate_for_level(level) : kFillerNoteRate;
        const double env = 0.55 + 0.45 * std::sin(2.0 * M_PI * rate * t);
        const double s = 0.6 * env * std::sin(2.0 * M_PI * tone * t + phase) +
                         0.01 * (rng.uniform() - 0.5);
        buf.samples[static_cast<std::size_t>(i)] = s;
    }
    write_wav(buf, path);
}

} // namespace

DatasetManifest generate_synthetic(const SyntheticSpec& spec, const std::string& out_dir) {
    spec.validate();
    fs::create_directories(out_dir);
    fs::create_directories(out_dir + "/frames");
    fs::create_directories(out_dir + "/audio");

    DatasetManifest manifest;
    for (const int level : spec.levels) {
        const int total = spec.train_per_level + spec.test_per_level;
        for (int k = 0; k < total; ++k) {
            const bool is_train = k < spec.train_per_level;
            char id[64];
            std::snprintf(id, sizeof(id), "lv%02d_%s%d", level,
                          is_train ? "tr" : "te", is_train ? k : k - spec.train_per_level);

            Rng rng(combine_seed(spec.seed,
                                 combine_seed(static_cast<std::uint64_t>(level),
                                              static_cast<std::uint64_t>(k))));
            CueSchedule schedule;
            if (spec.cue == CueType::Global) {
                schedule.cue_begin = 0;
                schedule.cue_end = spec.frame_count;
            } else {
                const long cue_len = std::max<long>(
                    1, std::lround(spec.localized_fraction *
                                   static_cast<double>(spec.frame_count)));
                schedule.cue_begin = static_cast<long>(
                    rng.uniform_int(static_cast<std::uint64_t>(spec.frame_count - cue_len + 1)));
                schedule.cue_end = schedule.cue_begin + cue_len;
            }

            const std::string frame_dir = out_dir + "/frames/" + id;
            fs::create_directories(frame_dir);
            render_performance_frames(spec, schedule, spec.speed_for_level(level),
                                      frame_dir, rng);
            const std::string wav_path = out_dir + "/audio/" + std::string(id) + ".wav";
            render_performance_audio(spec, schedule, level, wav_path, rng);

            PerformanceRecord rec;
            rec.id = id;
            rec.video_uri = "frames/" + std::string(id);
            rec.frame_count = spec.frame_count;
            rec.fps = spec.fps;
            rec.audio_uri = "audio/" + std::string(id) + ".wav";
            rec.audio_sample_rate = spec.audio_sample_rate;
            rec.player_level = PlayerLevel::checked(level);
            rec.song_level = SongLevel::checked(level);
            rec.song_name = "synthetic etude " + std::to_string(level);
            rec.hand_bbox = HandBBox{(spec.frame_width - kVisualSize) / 2,
                                     (spec.frame_height - kVisualSize) / 2,
                                     kVisualSize, kVisualSize};
            rec.split = is_train ? Split::Train : Split::Test;
            manifest.records.push_back(std::move(rec));
        }
    }
    save_manifest(manifest, out_dir + "/manifest.json");
    return manifest;
}

} // namespace pianoskill
