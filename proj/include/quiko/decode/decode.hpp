#pragma once

#include "quiko/qsim/simulator.hpp"

#include <map>
#include <string>
#include <vector>

namespace quiko::decode {

struct SampleDistribution {
    std::string sample_id;
    std::vector<double> probs; // 8 timbre outcomes, index = timbre code
};

// Per-subdivision timbre distribution. Subdivisions that received no counts
// fall back to the uniform distribution and carry the low-confidence flag.
struct Conditional {
    std::vector<double> probs;
    bool low_confidence = false;
};

// Splits 6-bit joint keys (spinal|timbre) and normalizes per subdivision.
// The spinal field renders LSB-first within the key (classical bit order),
// while the subdivision index reads q3 as its MSB.
std::vector<Conditional> conditional_timbre(const std::map<std::string, double>& joint_weights,
                                            int n_subdivisions);
std::vector<Conditional> conditional_timbre(const qsim::ShotHistogram& joint,
                                            int n_subdivisions);

// Normalized subdivision marginal of the same joint keys.
std::vector<double> spinal_marginal(const std::map<std::string, double>& joint_weights,
                                    int n_subdivisions);

// Classical fidelity F = (sum_k sqrt(p_k q_k))^2 between measured
// distributions (the diagonal-state specialization of state fidelity).
double fidelity(const std::vector<double>& p, const std::vector<double>& q);

struct LayerEntry {
    std::string sample_id;
    double fidelity = 0.0;
};

struct LayerTable {
    int n_subdivisions = 0;
    int n_layers = 0;
    std::vector<std::vector<LayerEntry>> columns; // per subdivision, fidelity-descending
    std::vector<bool> low_confidence;             // per subdivision

    std::string to_json_string(int indent = -1) const;
    static LayerTable from_json_string(const std::string& text);
};

LayerTable layer_table(const std::vector<Conditional>& input_conditionals,
                       const std::vector<SampleDistribution>& db);

struct BeatSlot {
    int subdivision_index = 0;
    std::string sample_id;
    double fidelity = 0.0;
};

struct BeatSchedule {
    std::vector<BeatSlot> slots;
    std::string encoder_kind;
    int layer_index = 0;
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    std::string generator;

    std::string to_json_string(int indent = -1) const;
    static BeatSchedule from_json_string(const std::string& text);
};

BeatSchedule build_schedule(const LayerTable& table, int layer_index);

} // namespace quiko::decode
