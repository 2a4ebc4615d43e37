#pragma once

#include "quiko/audio/audio_buffer.hpp"

#include <vector>

namespace quiko::audio {

struct BandSet {
    std::vector<AudioBuffer> bands; // ordered low -> high
    double f_lo = 0.0;
    double f_hi = 0.0;
};

// Splits the signal into n_bands: lowpass below f_lo, highpass above f_hi,
// and bandpass bands in between (one for the default n_bands = 3; extra
// bands split [f_lo, f_hi] at log-spaced edges). Each band is 4th-order
// Butterworth-style IIR (two cascaded biquads) applied forward-backward,
// so the result is zero-phase.
BandSet filter_bank(const AudioBuffer& buf, double f_lo, double f_hi, int n_bands = 3);

// Building blocks, exposed for tests.
struct Biquad {
    double b0 = 1, b1 = 0, b2 = 0, a1 = 0, a2 = 0;

    static Biquad lowpass(double cutoff_hz, double sample_rate, double q);
    static Biquad highpass(double cutoff_hz, double sample_rate, double q);
};

std::vector<double> filtfilt(const std::vector<Biquad>& cascade, const std::vector<double>& x);

} // namespace quiko::audio
