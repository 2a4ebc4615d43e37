#pragma once

#include "quiko/audio/wav.hpp"
#include "quiko/common/rng.hpp"
#include "quiko/qsim/circuit.hpp"
#include "quiko/qsim/simulator.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace testutil {

using quiko::u01;
using quiko::qsim::Circuit;
using quiko::qsim::Control;
using quiko::qsim::cplx;
using quiko::qsim::GateKind;
using quiko::qsim::StateVector;

// ---------------------------------------------------------------------------
// quantum helpers

inline StateVector run_unitaries(const Circuit& c) {
    StateVector state(c.n_qubits);
    quiko::qsim::apply_circuit_unitaries(state, c);
    return state;
}

inline double max_amp_diff(const StateVector& a, const StateVector& b) {
    double mx = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        mx = std::max(mx, std::abs(a.amplitude(i) - b.amplitude(i)));
    return mx;
}

inline StateVector random_state(std::mt19937_64& rng, int n_qubits) {
    StateVector s(n_qubits);
    double norm = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i) {
        const cplx v(2.0 * u01(rng) - 1.0, 2.0 * u01(rng) - 1.0);
        s.set_amplitude(i, v);
        norm += std::norm(v);
    }
    s.scale(1.0 / std::sqrt(norm));
    return s;
}

// Random unitary circuit over H/X/P/U3/SWAP with random open/closed controls
// (up to 2), the workload for the Kronecker-oracle equivalence checks.
inline Circuit random_circuit(std::mt19937_64& rng, int n_qubits, int n_gates) {
    Circuit c(n_qubits, n_qubits);
    const auto pick_qubit = [&](std::vector<int>& used) {
        for (;;) {
            const int q = static_cast<int>(u01(rng) * n_qubits);
            bool clash = false;
            for (int u : used)
                clash |= (u == q);
            if (!clash) {
                used.push_back(q);
                return q;
            }
        }
    };
    for (int g = 0; g < n_gates; ++g) {
        std::vector<int> used;
        const double kindsel = u01(rng);
        std::vector<Control> ctrls;
        const auto add_controls = [&](int max_arity) {
            const int avail = n_qubits - max_arity;
            const int want = static_cast<int>(u01(rng) * 3); // 0..2
            for (int i = 0; i < std::min(want, avail); ++i)
                ctrls.push_back({pick_qubit(used), u01(rng) < 0.5});
        };
        if (kindsel < 0.25) {
            const int t = pick_qubit(used);
            add_controls(1);
            c.add({GateKind::H, {t}, ctrls, {}, {}});
        } else if (kindsel < 0.45) {
            const int t = pick_qubit(used);
            add_controls(1);
            c.add({GateKind::X, {t}, ctrls, {}, {}});
        } else if (kindsel < 0.65) {
            const int t = pick_qubit(used);
            add_controls(1);
            c.add({GateKind::P, {t}, ctrls, {}, {2.0 * std::numbers::pi * u01(rng)}});
        } else if (kindsel < 0.9 || n_qubits < 2) {
            const int t = pick_qubit(used);
            add_controls(1);
            c.add({GateKind::U3,
                   {t},
                   ctrls,
                   {},
                   {std::numbers::pi * u01(rng), 2.0 * std::numbers::pi * u01(rng),
                    2.0 * std::numbers::pi * u01(rng)}});
        } else {
            const int a = pick_qubit(used);
            const int b = pick_qubit(used);
            add_controls(2);
            c.add({GateKind::Swap, {a, b}, ctrls, {}, {}});
        }
    }
    return c;
}

// Closed-form QPE outcome distribution (Fejer kernel):
// P(k) = |sin(2^n pi d_k) / (2^n sin(pi d_k))|^2 with d_k = theta - k/2^n.
inline double qpe_outcome_probability(double theta, int n_counting, int k) {
    const double n = double(std::uint64_t(1) << n_counting);
    const double delta = theta - double(k) / n;
    const double den = std::sin(std::numbers::pi * delta);
    if (std::abs(den) < 1e-15)
        return 1.0;
    const double num = std::sin(n * std::numbers::pi * delta);
    const double amp = num / (n * den);
    return amp * amp;
}

inline double total_variation(const std::map<std::string, double>& p,
                              const std::map<std::string, double>& q) {
    double tv = 0.0;
    for (const auto& [k, v] : p) {
        const auto it = q.find(k);
        tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : q)
        if (!p.count(k))
            tv += v;
    return tv / 2.0;
}

inline std::map<std::string, double> histogram_freqs(const quiko::qsim::ShotHistogram& h) {
    std::map<std::string, double> f;
    for (const auto& [k, c] : h.counts)
        f[k] = double(c) / double(h.shots);
    return f;
}

// ---------------------------------------------------------------------------
// audio fixtures

inline quiko::audio::AudioBuffer make_sine(double freq, double sample_rate, std::size_t n,
                                           double amp = 0.5) {
    quiko::audio::AudioBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        buf.samples[i] = amp * std::sin(2.0 * std::numbers::pi * freq * double(i) / sample_rate);
    return buf;
}

inline quiko::audio::AudioBuffer make_silence(double sample_rate, std::size_t n) {
    quiko::audio::AudioBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.assign(n, 0.0);
    return buf;
}

inline quiko::audio::AudioBuffer make_noise(double sample_rate, std::size_t n,
                                            std::uint64_t seed, double amp = 0.5) {
    quiko::audio::AudioBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.resize(n);
    auto rng = quiko::make_engine(seed, 0xA0D10);
    for (std::size_t i = 0; i < n; ++i)
        buf.samples[i] = amp * (2.0 * u01(rng) - 1.0);
    return buf;
}

inline void add_click(quiko::audio::AudioBuffer& buf, std::size_t at, double amp = 0.9) {
    if (at < buf.samples.size())
        buf.samples[at] += amp;
}

// raw little-endian writers for loader tests
inline void write_wav_pcm16_raw(const std::string& path, const std::vector<std::int16_t>& mono,
                                std::uint32_t sr) {
    std::ofstream out(path, std::ios::binary);
    const auto u32 = [&](std::uint32_t v) {
        const char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
        out.write(b, 4);
    };
    const auto u16 = [&](std::uint16_t v) {
        const char b[2] = {char(v), char(v >> 8)};
        out.write(b, 2);
    };
    const std::uint32_t data = std::uint32_t(mono.size()) * 2;
    out.write("RIFF", 4);
    u32(36 + data);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    u32(16);
    u16(1);
    u16(1);
    u32(sr);
    u32(sr * 2);
    u16(2);
    u16(16);
    out.write("data", 4);
    u32(data);
    for (std::int16_t s : mono)
        u16(static_cast<std::uint16_t>(s));
}

inline void write_wav_pcm16_stereo(const std::string& path, const std::vector<std::int16_t>& left,
                                   const std::vector<std::int16_t>& right, std::uint32_t sr) {
    std::ofstream out(path, std::ios::binary);
    const auto u32 = [&](std::uint32_t v) {
        const char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
        out.write(b, 4);
    };
    const auto u16 = [&](std::uint16_t v) {
        const char b[2] = {char(v), char(v >> 8)};
        out.write(b, 2);
    };
    const std::uint32_t data = std::uint32_t(left.size()) * 4;
    out.write("RIFF", 4);
    u32(36 + data);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    u32(16);
    u16(1);
    u16(2);
    u32(sr);
    u32(sr * 4);
    u16(4);
    u16(16);
    out.write("data", 4);
    u32(data);
    for (std::size_t i = 0; i < left.size(); ++i) {
        u16(static_cast<std::uint16_t>(left[i]));
        u16(static_cast<std::uint16_t>(right[i]));
    }
}

inline void write_wav_pcm24_raw(const std::string& path, const std::vector<std::int32_t>& mono,
                                std::uint32_t sr) {
    std::ofstream out(path, std::ios::binary);
    const auto u32 = [&](std::uint32_t v) {
        const char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
        out.write(b, 4);
    };
    const auto u16 = [&](std::uint16_t v) {
        const char b[2] = {char(v), char(v >> 8)};
        out.write(b, 2);
    };
    const std::uint32_t data = std::uint32_t(mono.size()) * 3;
    out.write("RIFF", 4);
    u32(36 + data);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    u32(16);
    u16(1);
    u16(1);
    u32(sr);
    u32(sr * 3);
    u16(3);
    u16(24);
    out.write("data", 4);
    u32(data);
    for (std::int32_t s : mono) {
        const char b[3] = {char(s), char(s >> 8), char(s >> 16)};
        out.write(b, 3);
    }
}

inline void write_wav_f32_raw(const std::string& path, const std::vector<float>& mono,
                              std::uint32_t sr) {
    std::ofstream out(path, std::ios::binary);
    const auto u32 = [&](std::uint32_t v) {
        const char b[4] = {char(v), char(v >> 8), char(v >> 16), char(v >> 24)};
        out.write(b, 4);
    };
    const auto u16 = [&](std::uint16_t v) {
        const char b[2] = {char(v), char(v >> 8)};
        out.write(b, 2);
    };
    const std::uint32_t data = std::uint32_t(mono.size()) * 4;
    out.write("RIFF", 4);
    u32(36 + data);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    u32(16);
    u16(3);
    u16(1);
    u32(sr);
    u32(sr * 4);
    u16(4);
    u16(32);
    out.write("data", 4);
    u32(data);
    for (float s : mono) {
        std::uint32_t u;
        std::memcpy(&u, &s, 4);
        u32(u);
    }
}

} // namespace testutil
