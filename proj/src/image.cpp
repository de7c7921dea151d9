#include "pianoskill/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "pianoskill/error.hpp"

namespace pianoskill {

namespace {

int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comment lines
    while (true) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) throw ParseError("truncated PNM header");
    return value;
}

} // namespace

Image read_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open image: " + path);
    char m0 = 0, m1 = 0;
    in.get(m0);
    in.get(m1);
    int channels = 0;
    if (m0 == 'P' && m1 == '6') channels = 3;
    else if (m0 == 'P' && m1 == '5') channels = 1;
    else throw ParseError("unsupported PNM magic in " + path + " (want P5/P6)");

    const int width = read_pnm_token(in);
    const int height = read_pnm_token(in);
    const int maxval = read_pnm_token(in);
    if (width <= 0 || height <= 0)
        throw ParseError("bad PNM dimensions in " + path);
    if (maxval != 255)
        throw ParseError("unsupported PNM maxval in " + path + " (want 255)");
    in.get(); // single whitespace after header

    const std::size_t n = static_cast<std::size_t>(width) * height * channels;
    std::vector<std::uint8_t> raw(n);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw ParseError("truncated PNM pixel data in " + path);

    Image img(width, height, channels);
    for (std::size_t i = 0; i < n; ++i)
        img.data[i] = static_cast<float>(raw[i]) / 255.0f;
    return img;
}

void write_ppm(const Image& img, const std::string& path) {
    if (img.channels != 3 && img.channels != 1)
        throw IoError("write_ppm expects 1 or 3 channels");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write image: " + path);
    out << (img.channels == 3 ? "P6" : "P5") << "\n"
        << img.width << " " << img.height << "\n255\n";
    std::vector<std::uint8_t> raw(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        const float v = std::clamp(img.data[i], 0.0f, 1.0f);
        raw[i] = static_cast<std::uint8_t>(std::lround(v * 255.0f));
    }
    out.write(reinterpret_cast<const char*>(raw.data()),
              static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoError("failed writing image: " + path);
}

Image crop(const Image& img, const HandBBox& bbox) {
    if (bbox.w <= 0 || bbox.h <= 0 || bbox.x < 0 || bbox.y < 0 ||
        bbox.x + bbox.w > img.width || bbox.y + bbox.h > img.height)
        throw ValidationError("bbox (" + std::to_string(bbox.x) + "," +
                              std::to_string(bbox.y) + "," + std::to_string(bbox.w) +
                              "," + std::to_string(bbox.h) + ") outside " +
                              std::to_string(img.width) + "x" +
                              std::to_string(img.height) + " frame");
    Image out(bbox.w, bbox.h, img.channels);
    const std::size_t row_bytes = static_cast<std::size_t>(bbox.w) * img.channels;
    for (int y = 0; y < bbox.h; ++y) {
        const float* src = &img.data[(static_cast<std::size_t>(y + bbox.y) * img.width +
                                      bbox.x) * img.channels];
        std::copy(src, src + row_bytes,
                  &out.data[static_cast<std::size_t>(y) * row_bytes]);
    }
    return out;
}

Image resize_bilinear(const Image& img, int out_width, int out_height) {
    if (out_width <= 0 || out_height <= 0)
        throw ValidationError("resize target must be positive");
    if (out_width == img.width && out_height == img.height) return img;

    Image out(out_width, out_height, img.channels);
    const double sx = static_cast<double>(img.width) / out_width;
    const double sy = static_cast<double>(img.height) / out_height;
    for (int oy = 0; oy < out_height; ++oy) {
        double fy = (oy + 0.5) * sy - 0.5;
        fy = std::clamp(fy, 0.0, static_cast<double>(img.height - 1));
        const int y0 = static_cast<int>(fy);
        const int y1 = std::min(y0 + 1, img.height - 1);
        const float wy = static_cast<float>(fy - y0);
        for (int ox = 0; ox < out_width; ++ox) {
            double fx = (ox + 0.5) * sx - 0.5;
            fx = std::clamp(fx, 0.0, static_cast<double>(img.width - 1));
            const int x0 = static_cast<int>(fx);
            const int x1 = std::min(x0 + 1, img.width - 1);
            const float wx = static_cast<float>(fx - x0);
            for (int c = 0; c < img.channels; ++c) {
                const float top = img.at(y0, x0, c) * (1.0f - wx) + img.at(y0, x1, c) * wx;
                const float bot = img.at(y1, x0, c) * (1.0f - wx) + img.at(y1, x1, c) * wx;
                out.at(oy, ox, c) = top * (1.0f - wy) + bot * wy;
            }
        }
    }
    return out;
}

Image flip_horizontal(const Image& img) {
    Image out(img.width, img.height, img.channels);
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < img.channels; ++c)
                out.at(y, x, c) = img.at(y, img.width - 1 - x, c);
    return out;
}

} // namespace pianoskill
