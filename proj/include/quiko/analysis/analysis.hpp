#pragma once

#include "quiko/decode/decode.hpp"
#include "quiko/encoding/encoders.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace quiko::analysis {

// KL divergence in nats, sum_k p_k ln(p_k / q_k) with 0 ln 0 = 0. The
// denominator distribution is floored at 1e-12 and renormalized so that
// finite-shot zeros cannot produce infinities.
double kld(const std::vector<double>& p, const std::vector<double>& q);

// theta ~ U[0, pi], phi and lambda ~ U[0, 2 pi), independently per cell.
audio::EncodingMatrix random_encoding_matrix(std::mt19937_64& rng, int n_bands = 3,
                                             int n_subdivisions = 8);

struct AnalysisRunConfig {
    bool exact = true; // exact conditionals vs sampled shots
    std::uint64_t shots = 1024;
    qsim::NoiseConfig noise{};
};

struct ExpressibilityConfig {
    int db_size = 8;
    int M = 50;
    std::string encoder_kind = "static";
    std::uint64_t seed = 0;
    AnalysisRunConfig run{};
    bool clone_database = false; // degenerate database of identical samples
    int n_subdivisions = 8;
};

// Adapted expressibility: how uniformly random inputs spread database
// samples over each fidelity layer. Per layer, the empirical distribution of
// the occupying sample id (pooled over trials and subdivisions) is compared
// to uniform via KLD.
struct ExpressibilityCurve {
    std::vector<double> values; // one per layer, nats
    ExpressibilityConfig config;

    std::string to_json_string(int indent = -1) const;
    std::string to_csv_string() const; // header "layer,value"
};

ExpressibilityCurve expressibility_curve(const ExpressibilityConfig& cfg);

// Randomized database used by the expressibility protocol; exposed for the
// spinal report and the CLI compare command.
std::vector<decode::SampleDistribution>
random_database(int db_size, std::uint64_t seed, const AnalysisRunConfig& run, bool clones);

struct SpinalKldConfig {
    int M = 50;
    std::uint64_t seed = 0;
    AnalysisRunConfig run{};
    int n_subdivisions = 8;
};

struct KldReport {
    double d_static = 0.0;
    double d_pkbse = 0.0;
    std::string reference; // reference distribution label
    std::vector<double> reference_distribution;
    std::vector<double> averaged_static;
    std::vector<double> averaged_pkbse;

    std::string to_json_string(int indent = -1) const;
    std::string to_csv_string() const; // "encoder,kld"
};

// Averages the spinal-register distribution over M random-parameter runs of
// each encoder (paired input matrices) and reports the KLD against the
// equal-superposition reference circuit.
KldReport spinal_kld_report(const SpinalKldConfig& cfg);

} // namespace quiko::analysis
