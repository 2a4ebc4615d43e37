#pragma once

#include "quiko/qsim/circuit.hpp"
#include "quiko/qsim/state_vector.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace quiko::qsim {

// Depolarizing stand-in for device noise: after each noisy gate every
// involved qubit suffers X/Y/Z with probability p/3 each (p1 for single-qubit
// gates, p2 for gates with controls and for SWAP); measured bits flip with
// probability p_readout at readout.
struct NoiseConfig {
    double p1 = 0.001;
    double p2 = 0.01;
    double p_readout = 0.02;
    bool enabled = false;

    void validate() const; // throws std::invalid_argument on out-of-range probabilities
};

struct ShotHistogram {
    int n_clbits = 0;
    std::uint64_t shots = 0;
    std::map<std::string, std::uint64_t> counts;

    // Rendering convention for keys; recorded in the JSON artifact.
    static constexpr const char* kKeyOrder = "clbit-msb-first";

    std::string to_json_string(int indent = -1) const;
    static ShotHistogram from_json_string(const std::string& text);
};

// Applies one unitary op (throws on Measure/Reset; Barrier is a no-op).
// QFT blocks are applied via their primitive expansion.
void apply_unitary_op(StateVector& state, const GateOp& op);

void apply_circuit_unitaries(StateVector& state, const Circuit& circuit);

// Samples `shots` classical outcomes. Deterministic for a fixed seed: shot i
// runs on an engine seeded from (seed, shot-stream, i).
ShotHistogram run_shots(const Circuit& circuit, std::uint64_t shots, const NoiseConfig& noise,
                        std::uint64_t seed);

// Noiseless analytic outcome distribution over classical register states.
// Terminal-measurement circuits are evaluated from the final statevector;
// circuits with mid-circuit measurement/reset fall back to branch
// enumeration (throws if the branch count would exceed max_branches).
std::map<std::string, double>
exact_probabilities(const Circuit& circuit, const NoiseConfig& noise = NoiseConfig{},
                    std::size_t max_branches = std::size_t(1) << 20);

struct Branch {
    StateVector state;
    double weight;
    std::vector<std::uint8_t> clbits;
};

std::vector<Branch> enumerate_branches(const Circuit& circuit,
                                       std::size_t max_branches = std::size_t(1) << 20);

std::string render_key(const std::vector<std::uint8_t>& clbits);

} // namespace quiko::qsim
