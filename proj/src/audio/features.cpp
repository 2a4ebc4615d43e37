#include "quiko/audio/features.hpp"

#include "quiko/audio/filter_bank.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace quiko::audio {

using nlohmann::json;

double round_sig12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return std::strtod(buf, nullptr);
}

EncodingMatrix EncodingMatrix::zeros(std::string source_id, int n_bands, int n_subdivisions) {
    EncodingMatrix m;
    m.source_id = std::move(source_id);
    m.n_bands = n_bands;
    m.n_subdivisions = n_subdivisions;
    m.entries.assign(std::size_t(n_bands) * n_subdivisions, FeatureTriple{});
    return m;
}

void AudioPipelineConfig::validate(double sample_rate) const {
    if (sample_rate <= 0)
        throw std::invalid_argument("audio config: sample rate must be positive");
    if (!(0.0 < f_lo && f_lo < f_hi && f_hi < sample_rate / 2.0))
        throw std::invalid_argument("audio config: cutoffs must satisfy 0 < f_lo < f_hi < Nyquist");
    if (n_bands < 1)
        throw std::invalid_argument("audio config: need at least 1 band");
    if (n_subdivisions < 1 || !std::has_single_bit(unsigned(n_subdivisions)))
        throw std::invalid_argument("audio config: n_subdivisions must be a power of two");
    if (stft.window < 4 || stft.hop < 1 || stft.hop > stft.window)
        throw std::invalid_argument("audio config: bad STFT window/hop");
}

namespace {

std::vector<double> onset_envelope(const AudioBuffer& perc, const StftConfig& cfg) {
    std::vector<double> x = perc.samples;
    if (x.size() < static_cast<std::size_t>(cfg.window))
        x.resize(cfg.window, 0.0);
    const Spectrogram spec = stft(x, cfg);
    std::vector<double> env(spec.n_frames, 0.0);
    for (int f = 0; f < spec.n_frames; ++f) {
        double acc = 0.0;
        for (int b = 0; b < spec.n_bins; ++b) {
            const double cur = std::abs(spec.at(f, b));
            const double prev = (f > 0) ? std::abs(spec.at(f - 1, b)) : 0.0;
            if (cur > prev)
                acc += cur - prev;
        }
        env[f] = acc;
    }
    return env;
}

// Peak picking: local maxima above mean + 1 sigma, strongest first, with the
// minimum spacing enforced greedily.
std::vector<double> pick_peaks(const std::vector<double>& env, int min_spacing_frames) {
    const std::size_t n = env.size();
    if (n == 0)
        return {};
    double mean = 0.0;
    for (double v : env)
        mean += v;
    mean /= double(n);
    double var = 0.0;
    for (double v : env)
        var += (v - mean) * (v - mean);
    const double thresh = mean + std::sqrt(var / double(n));

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        const double left = (i > 0) ? env[i - 1] : -1.0;
        const double right = (i + 1 < n) ? env[i + 1] : -1.0;
        if (env[i] > left && env[i] >= right && env[i] > thresh)
            candidates.push_back(i);
    }
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
        if (env[a] != env[b])
            return env[a] > env[b];
        return a < b;
    });

    std::vector<std::size_t> kept;
    for (std::size_t c : candidates) {
        bool ok = true;
        for (std::size_t k : kept)
            if (std::llabs(static_cast<long long>(c) - static_cast<long long>(k)) <
                min_spacing_frames) {
                ok = false;
                break;
            }
        if (ok)
            kept.push_back(c);
    }
    std::vector<double> values;
    values.reserve(kept.size());
    for (std::size_t k : kept)
        values.push_back(env[k]);
    return values;
}

struct SpectralPeak {
    std::size_t bin;
    double mag;
};

std::vector<SpectralPeak> top_spectral_peaks(const std::vector<double>& mags, std::size_t count) {
    std::vector<SpectralPeak> peaks;
    for (std::size_t k = 1; k + 1 < mags.size(); ++k)
        if (mags[k] > mags[k - 1] && mags[k] >= mags[k + 1] && mags[k] > 0.0)
            peaks.push_back({k, mags[k]});
    std::sort(peaks.begin(), peaks.end(), [](const SpectralPeak& a, const SpectralPeak& b) {
        if (a.mag != b.mag)
            return a.mag > b.mag;
        return a.bin < b.bin;
    });
    if (peaks.size() > count)
        peaks.resize(count);
    return peaks;
}

} // namespace

double theta_from_percussive(const AudioBuffer& perc, const OnsetConfig& cfg) {
    if (perc.samples.empty())
        return 0.0;
    const std::vector<double> env = onset_envelope(perc, cfg.stft);
    const double frames_per_s = perc.sample_rate > 0 ? perc.sample_rate / cfg.stft.hop : 0.0;
    const int spacing = std::max(1, static_cast<int>(std::lround(cfg.min_spacing_s * frames_per_s)));
    const std::vector<double> peaks = pick_peaks(env, spacing);
    if (peaks.empty())
        return 0.0;
    double sum = 0.0, mx = 0.0;
    for (double p : peaks) {
        sum += p;
        mx = std::max(mx, p);
    }
    const double raw = sum / mx; // in [1, N]
    const double theta = std::numbers::pi * raw / double(peaks.size());
    return std::clamp(theta, 0.0, std::numbers::pi);
}

double phi_from_harmonic(const AudioBuffer& harm, double sample_rate) {
    if (harm.samples.empty() || sample_rate <= 0)
        return 0.0;
    const std::vector<double> mags = magnitude_spectrum(harm.samples);
    const auto peaks = top_spectral_peaks(mags, 3);
    if (peaks.empty())
        return 0.0;
    const double bin_hz = sample_rate / double(spectrum_fft_size(harm.samples.size()));
    double wsum = 0.0, msum = 0.0;
    for (const SpectralPeak& p : peaks) {
        wsum += double(p.bin) * bin_hz * p.mag;
        msum += p.mag;
    }
    const double f_avg = wsum / msum;
    const double phi = 2.0 * std::numbers::pi * f_avg / (sample_rate / 2.0);
    return std::clamp(phi, 0.0, std::nextafter(2.0 * std::numbers::pi, 0.0));
}

double lambda_from_harmonic(const AudioBuffer& harm, double sample_rate) {
    if (harm.samples.empty() || sample_rate <= 0)
        return 0.0;
    const std::vector<double> mags = magnitude_spectrum(harm.samples);
    const double bin_hz = sample_rate / double(spectrum_fft_size(harm.samples.size()));
    double wsum = 0.0, msum = 0.0;
    for (std::size_t k = 0; k < mags.size(); ++k) {
        wsum += double(k) * bin_hz * mags[k];
        msum += mags[k];
    }
    if (msum == 0.0)
        return 0.0;
    const double centroid = wsum / msum;
    const double lam = 2.0 * std::numbers::pi * centroid / (sample_rate / 2.0);
    return std::clamp(lam, 0.0, std::nextafter(2.0 * std::numbers::pi, 0.0));
}

FeatureTriple extract_triple(const AudioBuffer& band_segment, const AudioPipelineConfig& cfg) {
    const HpssPair parts = hpss(band_segment, cfg.hpss_config());
    FeatureTriple t;
    t.theta = theta_from_percussive(parts.percussive, cfg.onset_config());
    t.phi = phi_from_harmonic(parts.harmonic, band_segment.sample_rate);
    t.lam = lambda_from_harmonic(parts.harmonic, band_segment.sample_rate);
    return t;
}

EncodingMatrix extract_matrix(const AudioBuffer& buf, const AudioPipelineConfig& cfg,
                              std::string source_id) {
    cfg.validate(buf.sample_rate);
    if (buf.samples.empty())
        throw std::invalid_argument("extract_matrix: empty buffer");
    const std::size_t seg_len = buf.samples.size() / cfg.n_subdivisions;
    if (seg_len < static_cast<std::size_t>(cfg.stft.window))
        throw std::invalid_argument(
            "extract_matrix: input too short for the requested subdivisions; provide a longer "
            "input or fewer subdivisions (each segment must span one STFT window)");

    const BandSet bands = filter_bank(buf, cfg.f_lo, cfg.f_hi, cfg.n_bands);
    EncodingMatrix m = EncodingMatrix::zeros(std::move(source_id), cfg.n_bands,
                                             cfg.n_subdivisions);
    for (int b = 0; b < cfg.n_bands; ++b) {
        for (int s = 0; s < cfg.n_subdivisions; ++s) {
            AudioBuffer seg;
            seg.sample_rate = buf.sample_rate;
            const auto begin = bands.bands[b].samples.begin() + std::size_t(s) * seg_len;
            seg.samples.assign(begin, begin + seg_len);
            m.at(b, s) = extract_triple(seg, cfg);
        }
    }
    return m;
}

std::string EncodingMatrix::to_json_string(int indent) const {
    json j;
    j["source_id"] = source_id;
    j["n_bands"] = n_bands;
    j["n_subdivisions"] = n_subdivisions;
    json rows = json::array();
    for (int b = 0; b < n_bands; ++b) {
        json row = json::array();
        for (int s = 0; s < n_subdivisions; ++s) {
            const FeatureTriple& t = at(b, s);
            row.push_back({{"theta", round_sig12(t.theta)},
                           {"phi", round_sig12(t.phi)},
                           {"lambda", round_sig12(t.lam)}});
        }
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j.dump(indent);
}

EncodingMatrix EncodingMatrix::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    EncodingMatrix m;
    m.source_id = j.at("source_id").get<std::string>();
    m.n_bands = j.at("n_bands").get<int>();
    m.n_subdivisions = j.at("n_subdivisions").get<int>();
    if (m.n_bands < 1 || m.n_subdivisions < 1 ||
        !std::has_single_bit(unsigned(m.n_subdivisions)))
        throw std::invalid_argument("encoding matrix json: bad dimensions");
    const json& rows = j.at("entries");
    if (rows.size() != static_cast<std::size_t>(m.n_bands))
        throw std::invalid_argument("encoding matrix json: band count mismatch");
    for (const json& row : rows) {
        if (row.size() != static_cast<std::size_t>(m.n_subdivisions))
            throw std::invalid_argument("encoding matrix json: subdivision count mismatch");
        for (const json& cell : row)
            m.entries.push_back({cell.at("theta").get<double>(), cell.at("phi").get<double>(),
                                 cell.at("lambda").get<double>()});
    }
    return m;
}

} // namespace quiko::audio
