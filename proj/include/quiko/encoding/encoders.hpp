#pragma once

#include "quiko/audio/features.hpp"
#include "quiko/qsim/circuit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quiko::enc {

using audio::EncodingMatrix;
using audio::FeatureTriple;
using qsim::Circuit;

// Register layout shared by both encoders: timbre register q0..q2 (low, mid,
// high band), spinal cord register q3.. with q3 the most significant bit of
// the subdivision index. Qubit i measures to classical bit i.
struct QuikoCircuitBundle {
    Circuit circuit;
    std::vector<int> timbre_qubits;
    std::vector<int> spinal_qubits;
    std::string encoder_kind; // "static" | "pkbse"
    int n_subdivisions = 0;
    int n_pulse_ops = 0;  // leading internal-pulse ops
    int n_prefix_ops = 0; // ops before the spinal inverse QFT + measurements
};

struct EncoderOptions {
    // Internal pulse: per-qubit Ry(alpha) state preparation instead of H.
    // Unset keeps the paper's equal-superposition pulse (plain H).
    std::optional<double> internal_pulse_alpha;
};

// Per-sample database circuit: U3(triple) of band b on qubit b, measure all.
Circuit database_circuit(const std::vector<FeatureTriple>& band_triples);

// Static encoding: one multi-controlled U3 triple per subdivision, control
// polarities matching the subdivision's binary pattern (closed for 1, open
// for 0, MSB on the lowest-index spinal qubit), then inverse QFT on the
// spinal register and measurement of all qubits.
QuikoCircuitBundle static_circuit(const EncodingMatrix& matrix, const EncoderOptions& opt = {});

// PKBSE accumulation grid: per band and per feature a 2 x (n_subdivisions/2)
// table. Within each half (split on the subdivision MSB) the entries are the
// negated cumulative feature sums, except the last which is the positive
// full-half sum.
struct PkbseMatrix {
    int n_bands = 0;
    int n_subdivisions = 0;

    int half_len() const { return n_subdivisions / 2; }
    double& at(int band, int feature, int half, int col) {
        return values[((std::size_t(band) * 3 + feature) * 2 + half) * half_len() + col];
    }
    double at(int band, int feature, int half, int col) const {
        return values[((std::size_t(band) * 3 + feature) * 2 + half) * half_len() + col];
    }

    std::vector<double> values; // [band][feature][half][col], features theta/phi/lambda

    std::string to_json_string(int indent = -1) const;
    static PkbseMatrix from_json_string(const std::string& text);
};

PkbseMatrix pkbse_matrix(const EncodingMatrix& matrix);

// PKBSE circuit: singly-controlled U3 sequences over the two measure halves,
// the first half enclosed in X gates on the spinal register; band b is
// paired with spinal qubit 3+b (low with the most significant).
QuikoCircuitBundle pkbse_circuit(const PkbseMatrix& pm, const EncoderOptions& opt = {});

// Reference circuit: H on each qubit, measure each.
Circuit equal_superposition_circuit(int n);

QuikoCircuitBundle build_encoder(const std::string& encoder_kind, const EncodingMatrix& matrix,
                                 const EncoderOptions& opt = {});

} // namespace quiko::enc
