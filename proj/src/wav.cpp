#include "pianoskill/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "pianoskill/error.hpp"

namespace pianoskill {

namespace {

std::uint32_t read_u32(std::istream& in) {
    std::uint8_t b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint16_t read_u16(std::istream& in) {
    std::uint8_t b[2];
    in.read(reinterpret_cast<char*>(b), 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

void write_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                       static_cast<char>((v >> 16) & 0xff),
                       static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

void write_u16(std::ostream& out, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
    out.write(b, 2);
}

} // namespace

AudioBuffer read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open wav: " + path);

    char tag[4];
    in.read(tag, 4);
    if (std::memcmp(tag, "RIFF", 4) != 0) throw ParseError("not a RIFF file: " + path);
    read_u32(in); // riff size
    in.read(tag, 4);
    if (std::memcmp(tag, "WAVE", 4) != 0) throw ParseError("not a WAVE file: " + path);

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::vector<char> payload;
    bool have_fmt = false, have_data = false;

    while (in.read(tag, 4)) {
        const std::uint32_t size = read_u32(in);
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            format = read_u16(in);
            channels = read_u16(in);
            rate = read_u32(in);
            read_u32(in); // byte rate
            read_u16(in); // block align
            bits = read_u16(in);
            if (size > 16) in.seekg(size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            payload.resize(size);
            in.read(payload.data(), size);
            if (static_cast<std::uint32_t>(in.gcount()) != size)
                throw ParseError("truncated wav data in " + path);
            have_data = true;
        } else {
            in.seekg(size + (size & 1), std::ios::cur);
        }
    }
    if (!have_fmt || !have_data) throw ParseError("missing fmt/data chunk in " + path);
    if (channels == 0 || rate == 0) throw ParseError("bad wav format in " + path);

    const bool pcm16 = format == 1 && bits == 16;
    const bool float32 = format == 3 && bits == 32;
    if (!pcm16 && !float32)
        throw ParseError("unsupported wav encoding in " + path +
                         " (want 16-bit PCM or 32-bit float)");

    const std::size_t bytes_per_sample = bits / 8u;
    const std::size_t frames = payload.size() / (bytes_per_sample * channels);
    AudioBuffer out;
    out.sample_rate = static_cast<long>(rate);
    out.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c) {
            const char* p = payload.data() + (i * channels + c) * bytes_per_sample;
            if (pcm16) {
                std::int16_t v;
                std::memcpy(&v, p, 2);
                acc += static_cast<double>(v) / 32768.0;
            } else {
                float v;
                std::memcpy(&v, p, 4);
                acc += static_cast<double>(v);
            }
        }
        out.samples[i] = acc / channels;
    }
    return out;
}

void write_wav(const AudioBuffer& audio, const std::string& path) {
    if (audio.sample_rate <= 0) throw IoError("write_wav: sample_rate must be positive");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write wav: " + path);

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, 1); // PCM
    write_u16(out, 1); // mono
    write_u32(out, static_cast<std::uint32_t>(audio.sample_rate));
    write_u32(out, static_cast<std::uint32_t>(audio.sample_rate * 2));
    write_u16(out, 2);
    write_u16(out, 16);
    out.write("data", 4);
    write_u32(out, data_bytes);
    for (const double s : audio.samples) {
        const double clamped = std::clamp(s, -1.0, 1.0);
        const std::int16_t v =
            static_cast<std::int16_t>(std::lround(clamped * 32767.0));
        write_u16(out, static_cast<std::uint16_t>(v));
    }
    if (!out) throw IoError("failed writing wav: " + path);
}

AudioBuffer resample_linear(const AudioBuffer& audio, long target_rate) {
    if (target_rate <= 0) throw ValidationError("target sample rate must be positive");
    if (audio.sample_rate == target_rate || audio.samples.empty()) {
        AudioBuffer out = audio;
        out.sample_rate = target_rate;
        return out;
    }
    const double ratio =
        static_cast<double>(audio.sample_rate) / static_cast<double>(target_rate);
    const std::size_t out_len = static_cast<std::size_t>(
        std::llround(static_cast<double>(audio.samples.size()) / ratio));
    AudioBuffer out;
    out.sample_rate = target_rate;
    out.samples.resize(out_len);
    const std::size_t last = audio.samples.size() - 1;
    for (std::size_t i = 0; i < out_len; ++i) {
        const double pos = std::min(i * ratio, static_cast<double>(last));
        const std::size_t i0 = static_cast<std::size_t>(pos);
        const std::size_t i1 = std::min(i0 + 1, last);
        const double w = pos - static_cast<double>(i0);
        out.samples[i] = audio.samples[i0] * (1.0 - w) + audio.samples[i1] * w;
    }
    return out;
}

} // namespace pianoskill
