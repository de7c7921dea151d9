#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pianoskill/types.hpp"

namespace pianoskill {

/// Dense row-major HWC image, values in [0,1].
struct Image {
    int width = 0;
    int height = 0;
    int channels = 0;
    std::vector<float> data;

    Image() = default;
    Image(int w, int h, int c)
        : width(w), height(h), channels(c),
          data(static_cast<std::size_t>(w) * h * c, 0.0f) {}

    float& at(int y, int x, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    float at(int y, int x, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
};

/// Binary PPM (P6, RGB) and PGM (P5, gray) with maxval 255.
Image read_pnm(const std::string& path);
void write_ppm(const Image& img, const std::string& path);

/// Sub-image of exactly (bbox.w, bbox.h); the box must lie inside the frame.
Image crop(const Image& img, const HandBBox& bbox);

/// Bilinear resize with half-pixel centers (align_corners=false). Output
/// values stay within the input value range.
Image resize_bilinear(const Image& img, int out_width, int out_height);

/// Mirrors along the horizontal axis (left-right).
Image flip_horizontal(const Image& img);

} // namespace pianoskill
