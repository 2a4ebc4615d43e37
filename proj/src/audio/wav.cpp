#include "quiko/audio/wav.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace quiko::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

std::uint32_t read_u32(const unsigned char* p) {
    return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
           (std::uint32_t(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
    return std::uint16_t(p[0] | (p[1] << 8));
}

[[noreturn]] void corrupt(const std::string& path, const std::string& why) {
    throw std::runtime_error("load_wav: " + path + ": " + why);
}

} // namespace

AudioBuffer load_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        corrupt(path, "cannot open file");
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (raw.size() < 12 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
        std::memcmp(raw.data() + 8, "WAVE", 4) != 0)
        corrupt(path, "not a RIFF/WAVE file");

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    const unsigned char* data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= raw.size()) {
        const char* id = reinterpret_cast<const char*>(raw.data() + pos);
        const std::uint32_t size = read_u32(raw.data() + pos + 4);
        const std::size_t body = pos + 8;
        if (body + size > raw.size())
            corrupt(path, "truncated chunk");
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (size < 16)
                corrupt(path, "fmt chunk too small");
            format = read_u16(raw.data() + body);
            channels = read_u16(raw.data() + body + 2);
            sample_rate = read_u32(raw.data() + body + 4);
            bits = read_u16(raw.data() + body + 14);
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = raw.data() + body;
            data_size = size;
        }
        pos = body + size + (size & 1); // chunks are word-aligned
    }

    if (!data || channels == 0 || sample_rate == 0)
        corrupt(path, "missing fmt or data chunk");
    if (format == kFormatPcm) {
        if (bits != 16 && bits != 24)
            corrupt(path, "unsupported PCM depth (want 16 or 24 bit)");
    } else if (format == kFormatFloat) {
        if (bits != 32)
            corrupt(path, "unsupported float depth (want 32 bit)");
    } else {
        corrupt(path, "unsupported codec (want PCM or IEEE float)");
    }

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t frame_bytes = bytes_per_sample * channels;
    const std::size_t n_frames = data_size / frame_bytes;

    AudioBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.resize(n_frames);
    for (std::size_t f = 0; f < n_frames; ++f) {
        double acc = 0.0;
        for (std::uint16_t ch = 0; ch < channels; ++ch) {
            const unsigned char* p = data + f * frame_bytes + ch * bytes_per_sample;
            double v = 0.0;
            if (format == kFormatFloat) {
                std::uint32_t u = read_u32(p);
                float fv;
                std::memcpy(&fv, &u, 4);
                v = std::clamp(double(fv), -1.0, 1.0);
            } else if (bits == 16) {
                const std::int16_t s = static_cast<std::int16_t>(read_u16(p));
                v = double(s) / 32768.0;
            } else { // 24-bit
                std::int32_t s = std::int32_t(p[0]) | (std::int32_t(p[1]) << 8) |
                                 (std::int32_t(p[2]) << 16);
                if (s & 0x800000)
                    s |= ~0xFFFFFF;
                v = double(s) / 8388608.0;
            }
            acc += v;
        }
        buf.samples[f] = acc / double(channels);
    }
    return buf;
}

void write_wav16(const std::string& path, const AudioBuffer& buf) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("write_wav16: cannot open " + path);

    const std::uint32_t n = static_cast<std::uint32_t>(buf.samples.size());
    const std::uint32_t data_size = n * 2;
    const std::uint32_t sr = static_cast<std::uint32_t>(buf.sample_rate);

    const auto put_u32 = [&](std::uint32_t v) {
        const char b[4] = {char(v & 0xff), char((v >> 8) & 0xff), char((v >> 16) & 0xff),
                           char((v >> 24) & 0xff)};
        out.write(b, 4);
    };
    const auto put_u16 = [&](std::uint16_t v) {
        const char b[2] = {char(v & 0xff), char((v >> 8) & 0xff)};
        out.write(b, 2);
    };

    out.write("RIFF", 4);
    put_u32(36 + data_size);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put_u32(16);
    put_u16(kFormatPcm);
    put_u16(1); // mono
    put_u32(sr);
    put_u32(sr * 2);
    put_u16(2);
    put_u16(16);
    out.write("data", 4);
    put_u32(data_size);
    for (std::uint32_t i = 0; i < n; ++i) {
        const double v = std::clamp(buf.samples[i], -1.0, 1.0);
        const auto s = static_cast<std::int16_t>(std::lround(v * 32767.0));
        put_u16(static_cast<std::uint16_t>(s));
    }
}

} // namespace quiko::audio
