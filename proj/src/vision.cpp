#include "pianoskill/vision.hpp"

#include <cstdio>
#include <filesystem>

#include "pianoskill/error.hpp"

namespace pianoskill {

DirectoryFrameSource::DirectoryFrameSource(std::string directory)
    : directory_(std::move(directory)) {
    if (!std::filesystem::is_directory(directory_))
        throw IoError("frame directory not found: " + directory_);
}

std::string DirectoryFrameSource::frame_filename(long index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04ld.ppm", index);
    return buf;
}

Image DirectoryFrameSource::read_frame(long index) const {
    return read_pnm(directory_ + "/" + frame_filename(index));
}

long DirectoryFrameSource::frame_count() const {
    long n = 0;
    while (std::filesystem::exists(directory_ + "/" + frame_filename(n))) ++n;
    return n;
}

VisualClip build_visual_clip(const std::vector<Image>& frames, const HandBBox& bbox,
                             const VisionConfig& config, bool augment, Rng* rng) {
    if (frames.size() != static_cast<std::size_t>(kFramesPerClip))
        throw ValidationError("build_visual_clip expects exactly " +
                              std::to_string(kFramesPerClip) + " frames, got " +
                              std::to_string(frames.size()));

    bool flip = false;
    if (augment) {
        if (rng == nullptr)
            throw ValidationError("augmentation requires a seeded generator");
        flip = rng->coin(config.flip_probability);
    }

    VisualClip out;
    out.data.resize(static_cast<std::size_t>(kFramesPerClip) * kVisualSize * kVisualSize * 3);
    std::size_t offset = 0;
    for (const Image& frame : frames) {
        if (frame.channels != 3)
            throw ValidationError("visual frames must have 3 channels");
        Image prepared = resize_bilinear(crop(frame, bbox), kVisualSize, kVisualSize);
        if (flip) prepared = flip_horizontal(prepared);
        for (int y = 0; y < kVisualSize; ++y)
            for (int x = 0; x < kVisualSize; ++x)
                for (int c = 0; c < 3; ++c)
                    out.data[offset++] =
                        (prepared.at(y, x, c) - config.mean[static_cast<std::size_t>(c)]) /
                        config.stddev[static_cast<std::size_t>(c)];
    }
    return out;
}

VisualClip load_visual_clip(const FrameSource& source, const ClipSpec& clip,
                            const HandBBox& bbox, const VisionConfig& config,
                            bool augment, Rng* rng) {
    std::vector<Image> frames;
    frames.reserve(static_cast<std::size_t>(clip.length));
    for (int i = 0; i < clip.length; ++i)
        frames.push_back(source.read_frame(clip.start_frame + i));
    VisualClip out = build_visual_clip(frames, bbox, config, augment, rng);
    out.provenance = clip;
    return out;
}

} // namespace pianoskill
