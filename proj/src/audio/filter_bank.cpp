#include "quiko/audio/filter_bank.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quiko::audio {

namespace {

// Butterworth pole-pair Q values for a 4th-order cascade of two biquads.
constexpr double kButterQ1 = 0.5411961001461970;
constexpr double kButterQ2 = 1.3065629648763766;
constexpr double kButterQ2nd = 0.7071067811865476; // single-biquad (2nd-order) case

std::vector<double> run_forward(const std::vector<Biquad>& cascade, std::vector<double> x) {
    for (const Biquad& f : cascade) {
        double z1 = 0.0, z2 = 0.0; // transposed direct form II
        for (double& v : x) {
            const double in = v;
            const double out = f.b0 * in + z1;
            z1 = f.b1 * in - f.a1 * out + z2;
            z2 = f.b2 * in - f.a2 * out;
            v = out;
        }
    }
    return x;
}

} // namespace

Biquad Biquad::lowpass(double cutoff_hz, double sample_rate, double q) {
    const double w = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
    const double cw = std::cos(w);
    const double alpha = std::sin(w) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    Biquad f;
    f.b0 = (1.0 - cw) / 2.0 / a0;
    f.b1 = (1.0 - cw) / a0;
    f.b2 = f.b0;
    f.a1 = -2.0 * cw / a0;
    f.a2 = (1.0 - alpha) / a0;
    return f;
}

Biquad Biquad::highpass(double cutoff_hz, double sample_rate, double q) {
    const double w = 2.0 * std::numbers::pi * cutoff_hz / sample_rate;
    const double cw = std::cos(w);
    const double alpha = std::sin(w) / (2.0 * q);
    const double a0 = 1.0 + alpha;
    Biquad f;
    f.b0 = (1.0 + cw) / 2.0 / a0;
    f.b1 = -(1.0 + cw) / a0;
    f.b2 = f.b0;
    f.a1 = -2.0 * cw / a0;
    f.a2 = (1.0 - alpha) / a0;
    return f;
}

std::vector<double> filtfilt(const std::vector<Biquad>& cascade, const std::vector<double>& x) {
    std::vector<double> y = run_forward(cascade, x);
    std::reverse(y.begin(), y.end());
    y = run_forward(cascade, std::move(y));
    std::reverse(y.begin(), y.end());
    return y;
}

BandSet filter_bank(const AudioBuffer& buf, double f_lo, double f_hi, int n_bands) {
    if (buf.sample_rate <= 0)
        throw std::invalid_argument("filter_bank: invalid sample rate");
    const double nyq = buf.sample_rate / 2.0;
    if (!(0.0 < f_lo && f_lo < f_hi && f_hi < nyq))
        throw std::invalid_argument("filter_bank: cutoffs must satisfy 0 < f_lo < f_hi < Nyquist");
    if (n_bands < 1)
        throw std::invalid_argument("filter_bank: need at least 1 band");
    if (n_bands == 1) { // single-band passthrough
        BandSet out;
        out.f_lo = f_lo;
        out.f_hi = f_hi;
        out.bands.push_back(buf);
        return out;
    }

    // Band edges: [lowpass@f_lo] [bandpass edges, log-spaced] [highpass@f_hi].
    std::vector<double> edges;
    edges.push_back(f_lo);
    const int n_mid = n_bands - 2;
    for (int i = 1; i < n_mid; ++i)
        edges.push_back(f_lo * std::pow(f_hi / f_lo, double(i) / double(n_mid)));
    edges.push_back(f_hi);

    BandSet out;
    out.f_lo = f_lo;
    out.f_hi = f_hi;
    for (int b = 0; b < n_bands; ++b) {
        std::vector<Biquad> cascade;
        if (b == 0) {
            cascade.push_back(Biquad::lowpass(f_lo, buf.sample_rate, kButterQ1));
            cascade.push_back(Biquad::lowpass(f_lo, buf.sample_rate, kButterQ2));
        } else if (b == n_bands - 1) {
            cascade.push_back(Biquad::highpass(f_hi, buf.sample_rate, kButterQ1));
            cascade.push_back(Biquad::highpass(f_hi, buf.sample_rate, kButterQ2));
        } else {
            cascade.push_back(Biquad::highpass(edges[b - 1], buf.sample_rate, kButterQ2nd));
            cascade.push_back(Biquad::lowpass(edges[b], buf.sample_rate, kButterQ2nd));
        }
        AudioBuffer band;
        band.sample_rate = buf.sample_rate;
        band.samples = filtfilt(cascade, buf.samples);
        out.bands.push_back(std::move(band));
    }
    return out;
}

} // namespace quiko::audio
