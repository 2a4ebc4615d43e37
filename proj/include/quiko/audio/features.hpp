#pragma once

#include "quiko/audio/audio_buffer.hpp"
#include "quiko/audio/hpss.hpp"

#include <string>
#include <vector>

namespace quiko::audio {

// The three U-gate angles per band per subdivision:
//   theta  <- percussive onsets (peak sum over max peak, scaled by pi/N)
//   phi    <- weighted average of the 3 highest spectral peaks / Nyquist
//   lambda <- spectral centroid / Nyquist
struct FeatureTriple {
    double theta = 0.0; // [0, pi]
    double phi = 0.0;   // [0, 2 pi)
    double lam = 0.0;   // [0, 2 pi)

    friend bool operator==(const FeatureTriple&, const FeatureTriple&) = default;
};

struct EncodingMatrix {
    std::string source_id;
    int n_bands = 0;
    int n_subdivisions = 0;
    std::vector<FeatureTriple> entries; // band-major

    FeatureTriple& at(int band, int subdiv) {
        return entries[std::size_t(band) * n_subdivisions + subdiv];
    }
    const FeatureTriple& at(int band, int subdiv) const {
        return entries[std::size_t(band) * n_subdivisions + subdiv];
    }

    static EncodingMatrix zeros(std::string source_id, int n_bands, int n_subdivisions);

    // Angles serialized to 12 significant digits.
    std::string to_json_string(int indent = -1) const;
    static EncodingMatrix from_json_string(const std::string& text);
};

struct OnsetConfig {
    StftConfig stft{};
    double min_spacing_s = 0.05;
};

struct AudioPipelineConfig {
    double f_lo = 200.0;
    double f_hi = 2000.0;
    int n_bands = 3;
    int n_subdivisions = 8;
    StftConfig stft{};
    int hpss_kernel_time = 17;
    int hpss_kernel_freq = 17;
    double onset_min_spacing_s = 0.05;

    HpssConfig hpss_config() const { return {stft, hpss_kernel_time, hpss_kernel_freq}; }
    OnsetConfig onset_config() const { return {stft, onset_min_spacing_s}; }

    void validate(double sample_rate) const; // throws std::invalid_argument
};

// Positive spectral flux envelope, peaks above mean + 1 sigma with the
// configured minimum spacing; returns pi * (sum of peaks / max peak) / N.
double theta_from_percussive(const AudioBuffer& perc, const OnsetConfig& cfg = {});

double phi_from_harmonic(const AudioBuffer& harm, double sample_rate);
double lambda_from_harmonic(const AudioBuffer& harm, double sample_rate);

FeatureTriple extract_triple(const AudioBuffer& band_segment, const AudioPipelineConfig& cfg);

// Full pipeline: filter bank, split into n_subdivisions contiguous equal
// segments, HPSS per band segment, then the three angles. Throws if a
// segment would be shorter than one STFT window.
EncodingMatrix extract_matrix(const AudioBuffer& buf, const AudioPipelineConfig& cfg,
                              std::string source_id = "input");

// Rounds to 12 significant digits (serialization contract for angles).
double round_sig12(double v);

} // namespace quiko::audio
