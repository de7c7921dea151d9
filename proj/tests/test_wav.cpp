#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "pianoskill/wav.hpp"
#include "pianoskill/error.hpp"

using namespace pianoskill;

TEST_CASE("wav round-trip keeps samples within 16-bit quantization") {
    AudioBuffer buf;
    buf.sample_rate = 22050;
    buf.samples.resize(4410);
    for (std::size_t i = 0; i < buf.samples.size(); ++i)
        buf.samples[i] = 0.8 * std::sin(2.0 * M_PI * 440.0 * static_cast<double>(i) / 22050.0);

    const auto path = std::filesystem::temp_directory_path() / "psk_wav_rt.wav";
    write_wav(buf, path.string());
    const auto back = read_wav(path.string());
    CHECK(back.sample_rate == 22050);
    REQUIRE(back.samples.size() == buf.samples.size());
    for (std::size_t i = 0; i < buf.samples.size(); ++i)
        CHECK(std::fabs(back.samples[i] - buf.samples[i]) < 1.0 / 16384.0);
    std::filesystem::remove(path);
}

TEST_CASE("resample_linear changes length proportionally") {
    AudioBuffer buf;
    buf.sample_rate = 44100;
    buf.samples.assign(44100, 0.25);
    const auto out = resample_linear(buf, 22050);
    CHECK(out.sample_rate == 22050);
    CHECK(out.samples.size() == 22050);
    for (const double s : out.samples) CHECK(s == doctest::Approx(0.25));
}

TEST_CASE("missing wav file raises IoError") {
    CHECK_THROWS_AS(read_wav("/nonexistent/file.wav"), IoError);
}
