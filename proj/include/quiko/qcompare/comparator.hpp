#pragma once

#include "quiko/encoding/encoders.hpp"
#include "quiko/qsim/simulator.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace quiko::qcompare {

struct TrackSpec {
    std::string track_id;
    std::vector<audio::FeatureTriple> bands; // 3 triples, low/mid/high
};

// One batch of the all-quantum comparison: the QuiKo encoder prefix on
// q0..q5, one qubit triple per concurrently loaded track, and a shared
// 3-qubit compare register reused across tracks via measure-then-reset.
// Classical layout: 3-bit field per track starting at bit 0 (track 0 owns
// the first three bits), the last three bits hold the subdivision.
struct ComparatorPlan {
    enc::QuikoCircuitBundle quiko;
    std::vector<TrackSpec> tracks;
    std::vector<std::array<int, 3>> track_groups;
    std::array<int, 3> compare_qubits{};
    int n_qubits = 0;
    int n_clbits = 0;
};

ComparatorPlan make_comparator_plan(const enc::QuikoCircuitBundle& quiko,
                                    std::vector<TrackSpec> tracks, int max_tracks_per_batch = 2);

// Encoder prefix; per track its U3 preparation, CNOTs from timbre and track
// qubits onto the compare register, compare measurement into the track's
// classical field, compare reset; finally the spinal inverse QFT and the
// subdivision measurement.
qsim::Circuit build_comparator(const ComparatorPlan& plan);

struct MatchCell {
    std::string track_id;
    int subdivision = 0;
    std::uint64_t match_count = 0; // compare field read "000"
    std::uint64_t total = 0;       // shots conditioned on this subdivision
    double match_rate = 0.0;
};

struct MatchReport {
    std::vector<MatchCell> cells;
    std::uint64_t shots_per_batch = 0;

    const MatchCell& cell(const std::string& track_id, int subdivision) const;
    std::string to_json_string(int indent = -1) const;
};

MatchReport parse_matches(const qsim::ShotHistogram& hist, const ComparatorPlan& plan);

// Splits `tracks` into batches of at most max_tracks_per_batch, runs each
// batch circuit on its own shot stream and merges the reports.
MatchReport run_comparison(const enc::QuikoCircuitBundle& quiko, std::vector<TrackSpec> tracks,
                           int max_tracks_per_batch, std::uint64_t shots,
                           const qsim::NoiseConfig& noise, std::uint64_t seed);

} // namespace quiko::qcompare
