#include "quiko/encoding/encoders.hpp"

#include <json.hpp>

#include <bit>
#include <cmath>
#include <stdexcept>

namespace quiko::enc {

using nlohmann::json;
using qsim::Control;
using qsim::GateKind;

namespace {

void apply_internal_pulse(Circuit& c, int n_qubits, const EncoderOptions& opt) {
    for (int q = 0; q < n_qubits; ++q) {
        if (opt.internal_pulse_alpha)
            c.ry(q, *opt.internal_pulse_alpha);
        else
            c.h(q);
    }
}

std::vector<int> spinal_lsb_first(int n_spinal) {
    // q3 is the subdivision MSB, so the LSB-first QFT order is reversed.
    std::vector<int> qs(n_spinal);
    for (int i = 0; i < n_spinal; ++i)
        qs[i] = 3 + n_spinal - 1 - i;
    return qs;
}

} // namespace

Circuit database_circuit(const std::vector<FeatureTriple>& band_triples) {
    if (band_triples.size() != 3)
        throw std::invalid_argument("database_circuit: expected exactly 3 band triples");
    Circuit c(3, 3);
    for (int b = 0; b < 3; ++b)
        c.u3(band_triples[b].theta, band_triples[b].phi, band_triples[b].lam, b);
    for (int b = 0; b < 3; ++b)
        c.measure(b, b);
    return c;
}

QuikoCircuitBundle static_circuit(const EncodingMatrix& matrix, const EncoderOptions& opt) {
    if (matrix.n_bands != 3)
        throw std::invalid_argument("static_circuit: expected 3 bands");
    const int n_sub = matrix.n_subdivisions;
    if (n_sub < 2 || !std::has_single_bit(unsigned(n_sub)))
        throw std::invalid_argument("static_circuit: n_subdivisions must be a power of two >= 2");
    if (static_cast<int>(matrix.entries.size()) != 3 * n_sub)
        throw std::invalid_argument("static_circuit: malformed matrix");
    const int k = std::countr_zero(unsigned(n_sub)); // spinal register size

    QuikoCircuitBundle bundle;
    bundle.encoder_kind = "static";
    bundle.n_subdivisions = n_sub;
    bundle.timbre_qubits = {0, 1, 2};
    for (int i = 0; i < k; ++i)
        bundle.spinal_qubits.push_back(3 + i);

    Circuit c(3 + k, 3 + k);
    apply_internal_pulse(c, 3 + k, opt);
    bundle.n_pulse_ops = static_cast<int>(c.ops.size());

    for (int s = 0; s < n_sub; ++s) {
        std::vector<Control> ctrls;
        for (int i = 0; i < k; ++i) {
            const bool bit = (s >> (k - 1 - i)) & 1; // MSB on q3
            ctrls.push_back({3 + i, bit});
        }
        for (int b = 0; b < 3; ++b) {
            const FeatureTriple& t = matrix.at(b, s);
            c.u3(t.theta, t.phi, t.lam, b, ctrls);
        }
    }
    bundle.n_prefix_ops = static_cast<int>(c.ops.size());

    c.inv_qft(spinal_lsb_first(k));
    for (int q = 0; q < 3 + k; ++q)
        c.measure(q, q);

    bundle.circuit = std::move(c);
    return bundle;
}

PkbseMatrix pkbse_matrix(const EncodingMatrix& matrix) {
    const int n_sub = matrix.n_subdivisions;
    if (n_sub < 2 || n_sub % 2 != 0)
        throw std::invalid_argument("pkbse_matrix: n_subdivisions must be even");
    PkbseMatrix pm;
    pm.n_bands = matrix.n_bands;
    pm.n_subdivisions = n_sub;
    pm.values.assign(std::size_t(matrix.n_bands) * 3 * 2 * pm.half_len(), 0.0);

    const int half = pm.half_len();
    for (int b = 0; b < matrix.n_bands; ++b) {
        for (int f = 0; f < 3; ++f) {
            for (int h = 0; h < 2; ++h) {
                double cum = 0.0;
                for (int j = 0; j < half; ++j) {
                    const FeatureTriple& t = matrix.at(b, h * half + j);
                    const double v = (f == 0) ? t.theta : (f == 1) ? t.phi : t.lam;
                    cum += v;
                    pm.at(b, f, h, j) = (j == half - 1) ? cum : -cum;
                }
            }
        }
    }
    return pm;
}

QuikoCircuitBundle pkbse_circuit(const PkbseMatrix& pm, const EncoderOptions& opt) {
    if (pm.n_bands != 3)
        throw std::invalid_argument("pkbse_circuit: expected 3 bands");
    if (pm.n_subdivisions != 8)
        throw std::invalid_argument(
            "pkbse_circuit: band/spinal pairing requires 8 subdivisions (3 spinal qubits)");
    if (pm.values.size() != std::size_t(pm.n_bands) * 3 * 2 * pm.half_len())
        throw std::invalid_argument("pkbse_circuit: malformed matrix");

    QuikoCircuitBundle bundle;
    bundle.encoder_kind = "pkbse";
    bundle.n_subdivisions = pm.n_subdivisions;
    bundle.timbre_qubits = {0, 1, 2};
    bundle.spinal_qubits = {3, 4, 5};

    Circuit c(6, 6);
    apply_internal_pulse(c, 6, opt);
    bundle.n_pulse_ops = static_cast<int>(c.ops.size());

    const auto half_block = [&](int h) {
        for (int j = 0; j < pm.half_len(); ++j) {
            for (int b = 0; b < 3; ++b) {
                c.u3(pm.at(b, 0, h, j), pm.at(b, 1, h, j), pm.at(b, 2, h, j), b,
                     {{3 + b, true}});
            }
        }
    };

    // First half (subdivision MSB = 0) is enclosed in X gates on the spinal
    // register; the second half runs on bare closed controls.
    for (int q = 3; q < 6; ++q)
        c.x(q);
    half_block(0);
    for (int q = 3; q < 6; ++q)
        c.x(q);
    half_block(1);
    bundle.n_prefix_ops = static_cast<int>(c.ops.size());

    c.inv_qft(spinal_lsb_first(3));
    for (int q = 0; q < 6; ++q)
        c.measure(q, q);

    bundle.circuit = std::move(c);
    return bundle;
}

Circuit equal_superposition_circuit(int n) {
    if (n < 1)
        throw std::invalid_argument("equal_superposition_circuit: need n >= 1");
    Circuit c(n, n);
    for (int q = 0; q < n; ++q)
        c.h(q);
    for (int q = 0; q < n; ++q)
        c.measure(q, q);
    return c;
}

QuikoCircuitBundle build_encoder(const std::string& encoder_kind, const EncodingMatrix& matrix,
                                 const EncoderOptions& opt) {
    if (encoder_kind == "static")
        return static_circuit(matrix, opt);
    if (encoder_kind == "pkbse")
        return pkbse_circuit(pkbse_matrix(matrix), opt);
    throw std::invalid_argument("unknown encoder kind: " + encoder_kind);
}

std::string PkbseMatrix::to_json_string(int indent) const {
    json j;
    j["n_bands"] = n_bands;
    j["n_subdivisions"] = n_subdivisions;
    j["features"] = {"theta", "phi", "lambda"};
    json bands = json::array();
    for (int b = 0; b < n_bands; ++b) {
        json feats = json::array();
        for (int f = 0; f < 3; ++f) {
            json halves = json::array();
            for (int h = 0; h < 2; ++h) {
                json cols = json::array();
                for (int c = 0; c < half_len(); ++c)
                    cols.push_back(audio::round_sig12(at(b, f, h, c)));
                halves.push_back(std::move(cols));
            }
            feats.push_back(std::move(halves));
        }
        bands.push_back(std::move(feats));
    }
    j["values"] = std::move(bands);
    return j.dump(indent);
}

PkbseMatrix PkbseMatrix::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    PkbseMatrix pm;
    pm.n_bands = j.at("n_bands").get<int>();
    pm.n_subdivisions = j.at("n_subdivisions").get<int>();
    if (pm.n_bands < 1 || pm.n_subdivisions < 2 || pm.n_subdivisions % 2 != 0)
        throw std::invalid_argument("pkbse json: bad dimensions");
    for (const json& band : j.at("values"))
        for (const json& feat : band)
            for (const json& half : feat)
                for (const json& v : half)
                    pm.values.push_back(v.get<double>());
    if (pm.values.size() != std::size_t(pm.n_bands) * 3 * 2 * pm.half_len())
        throw std::invalid_argument("pkbse json: value count mismatch");
    return pm;
}

} // namespace quiko::enc
