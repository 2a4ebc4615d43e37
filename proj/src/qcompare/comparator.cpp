#include "quiko/qcompare/comparator.hpp"

#include "quiko/common/rng.hpp"

#include <json.hpp>

#include <stdexcept>

namespace quiko::qcompare {

using nlohmann::json;
using qsim::Circuit;

ComparatorPlan make_comparator_plan(const enc::QuikoCircuitBundle& quiko,
                                    std::vector<TrackSpec> tracks, int max_tracks_per_batch) {
    if (tracks.empty())
        throw std::invalid_argument("make_comparator_plan: need at least one track");
    if (static_cast<int>(tracks.size()) > max_tracks_per_batch)
        throw std::invalid_argument(
            "make_comparator_plan: batch exceeds the configured concurrent track limit");
    if (quiko.spinal_qubits.size() != 3 || quiko.timbre_qubits.size() != 3)
        throw std::invalid_argument("make_comparator_plan: expected 3+3 register layout");
    for (const TrackSpec& t : tracks)
        if (t.bands.size() != 3)
            throw std::invalid_argument("make_comparator_plan: track needs 3 band triples");

    ComparatorPlan plan;
    plan.quiko = quiko;
    plan.tracks = std::move(tracks);
    const int n_tracks = static_cast<int>(plan.tracks.size());
    for (int g = 0; g < n_tracks; ++g)
        plan.track_groups.push_back({6 + 3 * g, 7 + 3 * g, 8 + 3 * g});
    const int cmp_base = 6 + 3 * n_tracks;
    plan.compare_qubits = {cmp_base, cmp_base + 1, cmp_base + 2};
    plan.n_qubits = cmp_base + 3;
    plan.n_clbits = 3 * n_tracks + 3;
    return plan;
}

Circuit build_comparator(const ComparatorPlan& plan) {
    Circuit c(plan.n_qubits, plan.n_clbits);

    // Encoder prefix (internal pulse + encoding cascade) acts on q0..q5.
    for (int i = 0; i < plan.quiko.n_prefix_ops; ++i)
        c.add(plan.quiko.circuit.ops[i]);

    for (std::size_t g = 0; g < plan.tracks.size(); ++g)
        for (int b = 0; b < 3; ++b) {
            const audio::FeatureTriple& t = plan.tracks[g].bands[b];
            c.u3(t.theta, t.phi, t.lam, plan.track_groups[g][b]);
        }

    for (std::size_t g = 0; g < plan.tracks.size(); ++g) {
        for (int b = 0; b < 3; ++b) {
            c.cx(b, plan.compare_qubits[b]);
            c.cx(plan.track_groups[g][b], plan.compare_qubits[b]);
        }
        for (int b = 0; b < 3; ++b)
            c.measure(plan.compare_qubits[b], static_cast<int>(3 * g) + b);
        for (int b = 0; b < 3; ++b)
            c.reset(plan.compare_qubits[b]);
    }

    // Subdivision readout last; q3 (subdivision MSB) lands on the lowest bit
    // of the final classical field, mirroring the 6-qubit encoder layout.
    c.inv_qft({5, 4, 3});
    const int spinal_field = 3 * static_cast<int>(plan.tracks.size());
    for (int i = 0; i < 3; ++i)
        c.measure(3 + i, spinal_field + i);
    return c;
}

MatchReport parse_matches(const qsim::ShotHistogram& hist, const ComparatorPlan& plan) {
    if (hist.n_clbits != plan.n_clbits)
        throw std::invalid_argument("parse_matches: histogram width does not match plan layout");

    const int n_tracks = static_cast<int>(plan.tracks.size());
    const int key_len = plan.n_clbits;
    std::vector<std::vector<std::uint64_t>> matches(n_tracks, std::vector<std::uint64_t>(8, 0));
    std::vector<std::uint64_t> totals(8, 0);

    for (const auto& [key, count] : hist.counts) {
        if (static_cast<int>(key.size()) != key_len)
            throw std::invalid_argument("parse_matches: key width mismatch");
        const auto bit = [&](int clbit) { return key[key_len - 1 - clbit] == '1'; };
        const int spinal_field = 3 * n_tracks;
        const int s = (bit(spinal_field) << 2) | (bit(spinal_field + 1) << 1) |
                      bit(spinal_field + 2);
        totals[s] += count;
        for (int t = 0; t < n_tracks; ++t) {
            const bool match = !bit(3 * t) && !bit(3 * t + 1) && !bit(3 * t + 2);
            if (match)
                matches[t][s] += count;
        }
    }

    MatchReport report;
    report.shots_per_batch = hist.shots;
    for (int t = 0; t < n_tracks; ++t)
        for (int s = 0; s < 8; ++s) {
            MatchCell cell;
            cell.track_id = plan.tracks[t].track_id;
            cell.subdivision = s;
            cell.match_count = matches[t][s];
            cell.total = totals[s];
            cell.match_rate = totals[s] ? double(matches[t][s]) / double(totals[s]) : 0.0;
            report.cells.push_back(std::move(cell));
        }
    return report;
}

MatchReport run_comparison(const enc::QuikoCircuitBundle& quiko, std::vector<TrackSpec> tracks,
                           int max_tracks_per_batch, std::uint64_t shots,
                           const qsim::NoiseConfig& noise, std::uint64_t seed) {
    MatchReport merged;
    merged.shots_per_batch = shots;
    std::size_t batch_index = 0;
    for (std::size_t start = 0; start < tracks.size(); start += max_tracks_per_batch) {
        const std::size_t end = std::min(tracks.size(), start + max_tracks_per_batch);
        std::vector<TrackSpec> batch(tracks.begin() + start, tracks.begin() + end);
        const ComparatorPlan plan =
            make_comparator_plan(quiko, std::move(batch), max_tracks_per_batch);
        const Circuit circuit = build_comparator(plan);
        const auto hist = qsim::run_shots(
            circuit, shots, noise, derive_seed(seed, streams::kCompareBatch, batch_index++));
        MatchReport part = parse_matches(hist, plan);
        merged.cells.insert(merged.cells.end(), part.cells.begin(), part.cells.end());
    }
    return merged;
}

const MatchCell& MatchReport::cell(const std::string& track_id, int subdivision) const {
    for (const MatchCell& c : cells)
        if (c.track_id == track_id && c.subdivision == subdivision)
            return c;
    throw std::out_of_range("MatchReport: no cell for " + track_id);
}

std::string MatchReport::to_json_string(int indent) const {
    json arr = json::array();
    for (const MatchCell& c : cells)
        arr.push_back({{"track_id", c.track_id},
                       {"subdivision", c.subdivision},
                       {"match_count", c.match_count},
                       {"total", c.total},
                       {"match_rate", c.match_rate}});
    json j;
    j["shots"] = shots_per_batch;
    j["cells"] = std::move(arr);
    return j.dump(indent);
}

} // namespace quiko::qcompare
