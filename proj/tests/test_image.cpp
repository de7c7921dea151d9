#include <doctest.h>

#include <algorithm>
#include <filesystem>

#include "pianoskill/image.hpp"
#include "pianoskill/rng.hpp"

using namespace pianoskill;

namespace {

Image random_image(int w, int h, int c, std::uint64_t seed) {
    Image img(w, h, c);
    Rng rng(seed);
    for (float& v : img.data) v = static_cast<float>(rng.uniform());
    return img;
}

} // namespace

TEST_CASE("identity crop returns the frame unchanged") {
    const auto img = random_image(64, 48, 3, 1);
    const auto out = crop(img, HandBBox{0, 0, 64, 48});
    CHECK(out.data == img.data);
}

TEST_CASE("crop offsets map to source pixels") {
    const auto img = random_image(320, 200, 3, 2);
    const auto out = crop(img, HandBBox{100, 50, 64, 36});
    CHECK(out.width == 64);
    CHECK(out.height == 36);
    CHECK(out.at(0, 0, 0) == img.at(50, 100, 0));
    CHECK(out.at(35, 63, 2) == img.at(85, 163, 2));
}

TEST_CASE("out-of-bounds crop is rejected") {
    const auto img = random_image(1920, 1080, 3, 3);
    CHECK_THROWS_AS(crop(img, HandBBox{1900, 0, 100, 100}), ValidationError);
    CHECK_THROWS_AS(crop(img, HandBBox{-1, 0, 10, 10}), ValidationError);
    CHECK_THROWS_AS(crop(img, HandBBox{0, 0, 0, 10}), ValidationError);
}

TEST_CASE("bilinear resize preserves the value range") {
    const auto img = random_image(37, 61, 3, 4);
    const auto [lo_it, hi_it] = std::minmax_element(img.data.begin(), img.data.end());
    const auto out = resize_bilinear(img, 112, 112);
    for (const float v : out.data) {
        CHECK(v >= *lo_it - 1e-6f);
        CHECK(v <= *hi_it + 1e-6f);
    }
}

TEST_CASE("resize of a constant image is constant") {
    Image img(50, 40, 1);
    std::fill(img.data.begin(), img.data.end(), 0.37f);
    const auto out = resize_bilinear(img, 224, 224);
    for (const float v : out.data) CHECK(v == doctest::Approx(0.37f));
}

TEST_CASE("upscaling maps edges to edges") {
    auto img = random_image(128, 128, 1, 5);
    const auto out = resize_bilinear(img, 224, 224);
    CHECK(out.at(0, 0, 0) == doctest::Approx(img.at(0, 0, 0)).epsilon(1e-4));
    CHECK(out.at(223, 223, 0) == doctest::Approx(img.at(127, 127, 0)).epsilon(1e-4));
}

TEST_CASE("horizontal flip is an involution") {
    const auto img = random_image(33, 21, 3, 6);
    CHECK(flip_horizontal(flip_horizontal(img)).data == img.data);
}

TEST_CASE("ppm round-trip through disk") {
    const auto img = random_image(31, 17, 3, 7);
    const auto path = std::filesystem::temp_directory_path() / "psk_img_rt.ppm";
    write_ppm(img, path.string());
    const auto back = read_pnm(path.string());
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    REQUIRE(back.channels == 3);
    for (std::size_t i = 0; i < img.data.size(); ++i)
        CHECK(back.data[i] == doctest::Approx(img.data[i]).epsilon(0.5 / 255.0 + 1e-6));
    std::filesystem::remove(path);
}
