#include "quiko/audio/hpss.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace quiko::audio {

namespace {

// Median over a window clamped to the valid range (no zero padding, so
// estimates near the edges do not get biased toward silence).
double median_of(std::vector<double>& scratch) {
    const std::size_t mid = scratch.size() / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    return scratch[mid];
}

} // namespace

HpssPair hpss(const AudioBuffer& buf, const HpssConfig& cfg) {
    if (cfg.kernel_time < 1 || cfg.kernel_freq < 1)
        throw std::invalid_argument("hpss: kernel sizes must be >= 1");

    const Spectrogram spec = stft(buf.samples, cfg.stft);
    const int nf = spec.n_frames;
    const int nb = spec.n_bins;

    std::vector<double> mag(std::size_t(nf) * nb);
    for (int f = 0; f < nf; ++f)
        for (int b = 0; b < nb; ++b)
            mag[std::size_t(f) * nb + b] = std::abs(spec.at(f, b));

    const int ht = cfg.kernel_time / 2;
    const int hf = cfg.kernel_freq / 2;

    Spectrogram harm = spec, perc = spec;
    std::vector<double> scratch;
    for (int f = 0; f < nf; ++f) {
        const int f0 = std::max(0, f - ht);
        const int f1 = std::min(nf - 1, f + ht);
        for (int b = 0; b < nb; ++b) {
            scratch.clear();
            for (int ff = f0; ff <= f1; ++ff)
                scratch.push_back(mag[std::size_t(ff) * nb + b]);
            const double h_med = median_of(scratch);

            const int b0 = std::max(0, b - hf);
            const int b1 = std::min(nb - 1, b + hf);
            scratch.clear();
            for (int bb = b0; bb <= b1; ++bb)
                scratch.push_back(mag[std::size_t(f) * nb + bb]);
            const double p_med = median_of(scratch);

            if (h_med >= p_med)
                perc.at(f, b) = cplx(0, 0);
            else
                harm.at(f, b) = cplx(0, 0);
        }
    }

    HpssPair out;
    out.harmonic.sample_rate = buf.sample_rate;
    out.percussive.sample_rate = buf.sample_rate;
    out.harmonic.samples = istft(harm, cfg.stft, buf.samples.size());
    out.percussive.samples = istft(perc, cfg.stft, buf.samples.size());
    return out;
}

} // namespace quiko::audio
