#include "quiko/audio/stft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quiko::audio {

namespace {

std::vector<double> hann_window(int n) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i)
        w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(i) / double(n));
    return w;
}

struct FftwBuffers {
    double* real = nullptr;
    fftw_complex* freq = nullptr;
    int n = 0;

    explicit FftwBuffers(int size) : n(size) {
        real = fftw_alloc_real(size);
        freq = fftw_alloc_complex(size / 2 + 1);
        if (!real || !freq)
            throw std::bad_alloc();
    }
    ~FftwBuffers() {
        fftw_free(real);
        fftw_free(freq);
    }
    FftwBuffers(const FftwBuffers&) = delete;
    FftwBuffers& operator=(const FftwBuffers&) = delete;
};

} // namespace

Spectrogram stft(const std::vector<double>& x, const StftConfig& cfg) {
    if (cfg.window < 4 || cfg.hop < 1 || cfg.hop > cfg.window)
        throw std::invalid_argument("stft: bad window/hop");
    if (x.size() < static_cast<std::size_t>(cfg.window))
        throw std::invalid_argument("stft: signal shorter than one window");

    const std::vector<double> win = hann_window(cfg.window);
    const std::size_t n_frames =
        1 + (x.size() - cfg.window + cfg.hop - 1) / cfg.hop; // tail zero-padded

    Spectrogram spec;
    spec.n_frames = static_cast<int>(n_frames);
    spec.n_bins = cfg.window / 2 + 1;
    spec.data.assign(n_frames * spec.n_bins, cplx(0, 0));

    FftwBuffers buf(cfg.window);
    fftw_plan plan = fftw_plan_dft_r2c_1d(cfg.window, buf.real, buf.freq, FFTW_ESTIMATE);
    for (std::size_t f = 0; f < n_frames; ++f) {
        const std::size_t start = f * cfg.hop;
        for (int i = 0; i < cfg.window; ++i) {
            const std::size_t idx = start + i;
            buf.real[i] = (idx < x.size()) ? x[idx] * win[i] : 0.0;
        }
        fftw_execute(plan);
        for (int b = 0; b < spec.n_bins; ++b)
            spec.at(static_cast<int>(f), b) = cplx(buf.freq[b][0], buf.freq[b][1]);
    }
    fftw_destroy_plan(plan);
    return spec;
}

std::vector<double> istft(const Spectrogram& spec, const StftConfig& cfg, std::size_t length) {
    const std::vector<double> win = hann_window(cfg.window);
    const std::size_t covered =
        spec.n_frames > 0 ? std::size_t(spec.n_frames - 1) * cfg.hop + cfg.window : 0;

    std::vector<double> acc(covered, 0.0);
    std::vector<double> wsum(covered, 0.0);

    FftwBuffers buf(cfg.window);
    fftw_plan plan = fftw_plan_dft_c2r_1d(cfg.window, buf.freq, buf.real, FFTW_ESTIMATE);
    for (int f = 0; f < spec.n_frames; ++f) {
        for (int b = 0; b < spec.n_bins; ++b) {
            buf.freq[b][0] = spec.at(f, b).real();
            buf.freq[b][1] = spec.at(f, b).imag();
        }
        fftw_execute(plan);
        const std::size_t start = std::size_t(f) * cfg.hop;
        for (int i = 0; i < cfg.window; ++i) {
            acc[start + i] += win[i] * buf.real[i] / double(cfg.window);
            wsum[start + i] += win[i] * win[i];
        }
    }
    fftw_destroy_plan(plan);

    std::vector<double> out(length, 0.0);
    const std::size_t n = std::min(length, covered);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (wsum[i] > 1e-10) ? acc[i] / wsum[i] : 0.0;
    return out;
}

std::size_t spectrum_fft_size(std::size_t n) {
    return std::bit_ceil(std::max<std::size_t>(n, 2));
}

std::vector<double> magnitude_spectrum(const std::vector<double>& x) {
    const std::size_t nfft = spectrum_fft_size(x.size());
    FftwBuffers buf(static_cast<int>(nfft));
    for (std::size_t i = 0; i < nfft; ++i)
        buf.real[i] = 0.0;
    // Hann over the actual segment keeps leakage symmetric around peaks.
    for (std::size_t i = 0; i < x.size(); ++i)
        buf.real[i] =
            x[i] * (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * double(i) / double(x.size())));
    fftw_plan plan =
        fftw_plan_dft_r2c_1d(static_cast<int>(nfft), buf.real, buf.freq, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    std::vector<double> mags(nfft / 2 + 1);
    for (std::size_t b = 0; b < mags.size(); ++b)
        mags[b] = std::hypot(buf.freq[b][0], buf.freq[b][1]);
    return mags;
}

} // namespace quiko::audio
