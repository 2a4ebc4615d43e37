#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace quiko::audio {

// Mono audio, samples nominally in [-1, 1].
struct AudioBuffer {
    std::vector<double> samples;
    double sample_rate = 0.0;

    std::size_t size() const { return samples.size(); }
    double duration() const { return sample_rate > 0 ? double(samples.size()) / sample_rate : 0; }
};

inline double energy(const AudioBuffer& buf) {
    double e = 0.0;
    for (double s : buf.samples)
        e += s * s;
    return e;
}

inline double rms(const AudioBuffer& buf) {
    return buf.samples.empty() ? 0.0 : std::sqrt(energy(buf) / double(buf.samples.size()));
}

} // namespace quiko::audio
