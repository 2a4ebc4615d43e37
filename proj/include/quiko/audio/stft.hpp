#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace quiko::audio {

using cplx = std::complex<double>;

struct StftConfig {
    int window = 2048;
    int hop = 512;
};

// Frame-major one-sided spectrogram (bins 0 .. window/2).
struct Spectrogram {
    int n_frames = 0;
    int n_bins = 0;

    cplx& at(int frame, int bin) { return data[std::size_t(frame) * n_bins + bin]; }
    const cplx& at(int frame, int bin) const { return data[std::size_t(frame) * n_bins + bin]; }

    std::vector<cplx> data;
};

// Hann-windowed STFT; the signal is zero-padded at the tail so that frames
// cover every input sample.
Spectrogram stft(const std::vector<double>& x, const StftConfig& cfg);

// Weighted overlap-add inverse, truncated/padded to `length` samples.
std::vector<double> istft(const Spectrogram& spec, const StftConfig& cfg, std::size_t length);

// Magnitude spectrum of the whole (Hann-windowed, zero-padded to a power of
// two) buffer: returns one-sided magnitudes; bin k is frequency
// k * sample_rate / fft_size with fft_size = spectrum_fft_size(x.size()).
std::vector<double> magnitude_spectrum(const std::vector<double>& x);
std::size_t spectrum_fft_size(std::size_t n);

} // namespace quiko::audio
