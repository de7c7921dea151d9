#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "pianoskill/image.hpp"
#include "pianoskill/rng.hpp"
#include "pianoskill/sampling.hpp"

namespace pianoskill {

inline constexpr int kVisualSize = 112;

struct VisionConfig {
    std::array<float, 3> mean = {0.45f, 0.45f, 0.45f};
    std::array<float, 3> stddev = {0.225f, 0.225f, 0.225f};
    double flip_probability = 0.5;
};

/// Model-ready frames for one clip: (16, 112, 112, 3) row-major THWC,
/// standardized values.
struct VisualClip {
    std::vector<float> data;
    ClipSpec provenance;

    float at(int t, int y, int x, int c) const {
        return data[((static_cast<std::size_t>(t) * kVisualSize + y) * kVisualSize + x) * 3 + c];
    }
};

/// Abstracts frame decoding so the pipeline is codec-free; the reference
/// implementation reads a directory of zero-padded numbered images.
class FrameSource {
public:
    virtual ~FrameSource() = default;
    virtual Image read_frame(long index) const = 0;
    virtual long frame_count() const = 0;
};

/// Frames named 0000.ppm, 0001.ppm, ... (at least four digits, widening
/// naturally past 9999).
class DirectoryFrameSource : public FrameSource {
public:
    explicit DirectoryFrameSource(std::string directory);

    Image read_frame(long index) const override;
    long frame_count() const override;

    static std::string frame_filename(long index);

private:
    std::string directory_;
};

/// Crop + resize only: (16, 112, 112, 3) row-major values still in [0,1].
/// The cacheable intermediate shared by the training data path.
std::vector<float> build_visual_clip_raw(const std::vector<Image>& frames,
                                         const HandBBox& bbox);

/// Crops the hand box from every frame, resizes to 112x112 and
/// standardizes. With augment set, flips all 16 frames together with
/// probability flip_probability drawn from the caller's generator.
VisualClip build_visual_clip(const std::vector<Image>& frames, const HandBBox& bbox,
                             const VisionConfig& config, bool augment, Rng* rng);

/// Reads the 16 frames of a clip from a source and builds the clip.
VisualClip load_visual_clip(const FrameSource& source, const ClipSpec& clip,
                            const HandBBox& bbox, const VisionConfig& config,
                            bool augment, Rng* rng);

} // namespace pianoskill
