#pragma once

#include "quiko/audio/audio_buffer.hpp"
#include "quiko/audio/stft.hpp"

namespace quiko::audio {

struct HpssPair {
    AudioBuffer percussive;
    AudioBuffer harmonic;
};

struct HpssConfig {
    StftConfig stft{};
    int kernel_time = 17; // median window along frames (harmonic estimate)
    int kernel_freq = 17; // median window along bins (percussive estimate)
};

// Median-filtering HPSS with hard masks: a bin goes to the harmonic part
// when its time-median dominates its frequency-median, and to the
// percussive part otherwise. The two masks partition every bin, so
// harmonic + percussive reconstructs the input (up to overlap-add edges).
HpssPair hpss(const AudioBuffer& buf, const HpssConfig& cfg = {});

} // namespace quiko::audio
