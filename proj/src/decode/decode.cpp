#include "quiko/decode/decode.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace quiko::decode {

using nlohmann::json;

namespace {

constexpr int kTimbreBits = 3;
constexpr int kTimbreOutcomes = 1 << kTimbreBits;

int spinal_bits_for(int n_subdivisions) {
    if (n_subdivisions < 2 || !std::has_single_bit(unsigned(n_subdivisions)))
        throw std::invalid_argument("conditional_timbre: n_subdivisions must be a power of two");
    return std::countr_zero(unsigned(n_subdivisions));
}

} // namespace

std::vector<Conditional> conditional_timbre(const std::map<std::string, double>& joint_weights,
                                            int n_subdivisions) {
    const int k = spinal_bits_for(n_subdivisions);
    const std::size_t key_len = std::size_t(k) + kTimbreBits;

    std::vector<std::vector<double>> acc(n_subdivisions,
                                         std::vector<double>(kTimbreOutcomes, 0.0));
    std::vector<double> totals(n_subdivisions, 0.0);

    for (const auto& [key, w] : joint_weights) {
        if (key.size() != key_len)
            throw std::invalid_argument("conditional_timbre: malformed key: " + key);
        for (char c : key)
            if (c != '0' && c != '1')
                throw std::invalid_argument("conditional_timbre: malformed key: " + key);
        // Key chars are classical bits MSB-first: c5..c3 = q5..q3 (spinal),
        // c2..c0 = q2..q0 (timbre). Subdivision reads q3 as MSB, so the
        // spinal chars contribute in reverse.
        int s = 0;
        for (int i = 0; i < k; ++i)
            s |= (key[i] == '1') << i;
        int t = 0;
        for (int i = 0; i < kTimbreBits; ++i)
            t = (t << 1) | (key[k + i] == '1');
        acc[s][t] += w;
        totals[s] += w;
    }

    std::vector<Conditional> out(n_subdivisions);
    for (int s = 0; s < n_subdivisions; ++s) {
        Conditional& c = out[s];
        if (totals[s] > 0.0) {
            c.probs.resize(kTimbreOutcomes);
            for (int t = 0; t < kTimbreOutcomes; ++t)
                c.probs[t] = acc[s][t] / totals[s];
        } else {
            c.probs.assign(kTimbreOutcomes, 1.0 / kTimbreOutcomes);
            c.low_confidence = true;
        }
    }
    return out;
}

std::vector<Conditional> conditional_timbre(const qsim::ShotHistogram& joint,
                                            int n_subdivisions) {
    std::map<std::string, double> weights;
    for (const auto& [key, count] : joint.counts)
        weights[key] = static_cast<double>(count);
    return conditional_timbre(weights, n_subdivisions);
}

std::vector<double> spinal_marginal(const std::map<std::string, double>& joint_weights,
                                    int n_subdivisions) {
    const int k = spinal_bits_for(n_subdivisions);
    std::vector<double> marginal(n_subdivisions, 0.0);
    double total = 0.0;
    for (const auto& [key, w] : joint_weights) {
        if (key.size() != std::size_t(k) + kTimbreBits)
            throw std::invalid_argument("spinal_marginal: malformed key: " + key);
        int s = 0;
        for (int i = 0; i < k; ++i)
            s |= (key[i] == '1') << i;
        marginal[s] += w;
        total += w;
    }
    if (total > 0.0)
        for (double& v : marginal)
            v /= total;
    return marginal;
}

double fidelity(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("fidelity: support size mismatch");
    double sp = 0.0, sq = 0.0;
    for (double v : p)
        sp += v;
    for (double v : q)
        sq += v;
    if (std::abs(sp - 1.0) > 1e-6 || std::abs(sq - 1.0) > 1e-6)
        throw std::invalid_argument("fidelity: inputs must be normalized");
    double bc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] < 0.0 || q[i] < 0.0)
            throw std::invalid_argument("fidelity: negative probability");
        bc += std::sqrt(p[i] * q[i]);
    }
    return std::clamp(bc * bc, 0.0, 1.0);
}

LayerTable layer_table(const std::vector<Conditional>& input_conditionals,
                       const std::vector<SampleDistribution>& db) {
    if (db.empty())
        throw std::invalid_argument("layer_table: empty database");
    LayerTable table;
    table.n_subdivisions = static_cast<int>(input_conditionals.size());
    table.n_layers = static_cast<int>(db.size());
    table.columns.resize(input_conditionals.size());
    table.low_confidence.resize(input_conditionals.size());
    for (std::size_t s = 0; s < input_conditionals.size(); ++s) {
        table.low_confidence[s] = input_conditionals[s].low_confidence;
        auto& col = table.columns[s];
        col.reserve(db.size());
        for (const SampleDistribution& sample : db)
            col.push_back({sample.sample_id, fidelity(input_conditionals[s].probs, sample.probs)});
        std::sort(col.begin(), col.end(), [](const LayerEntry& a, const LayerEntry& b) {
            if (a.fidelity != b.fidelity)
                return a.fidelity > b.fidelity;
            return a.sample_id < b.sample_id;
        });
    }
    return table;
}

BeatSchedule build_schedule(const LayerTable& table, int layer_index) {
    if (layer_index < 0 || layer_index >= table.n_layers)
        throw std::invalid_argument("build_schedule: layer index out of range");
    BeatSchedule sched;
    sched.layer_index = layer_index;
    for (int s = 0; s < table.n_subdivisions; ++s) {
        const LayerEntry& e = table.columns[s][layer_index];
        sched.slots.push_back({s, e.sample_id, e.fidelity});
    }
    return sched;
}

std::string LayerTable::to_json_string(int indent) const {
    json j;
    j["n_subdivisions"] = n_subdivisions;
    j["n_layers"] = n_layers;
    json cols = json::array();
    for (int s = 0; s < n_subdivisions; ++s) {
        json col = json::array();
        for (const LayerEntry& e : columns[s])
            col.push_back({{"sample_id", e.sample_id}, {"fidelity", e.fidelity}});
        cols.push_back(std::move(col));
    }
    j["columns"] = std::move(cols);
    j["low_confidence"] = std::vector<bool>(low_confidence.begin(), low_confidence.end());
    return j.dump(indent);
}

LayerTable LayerTable::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    LayerTable t;
    t.n_subdivisions = j.at("n_subdivisions").get<int>();
    t.n_layers = j.at("n_layers").get<int>();
    for (const json& col : j.at("columns")) {
        std::vector<LayerEntry> entries;
        for (const json& e : col)
            entries.push_back(
                {e.at("sample_id").get<std::string>(), e.at("fidelity").get<double>()});
        t.columns.push_back(std::move(entries));
    }
    for (bool b : j.at("low_confidence").get<std::vector<bool>>())
        t.low_confidence.push_back(b);
    return t;
}

std::string BeatSchedule::to_json_string(int indent) const {
    json j;
    j["metadata"] = {{"encoder_kind", encoder_kind}, {"layer_index", layer_index},
                     {"seed", seed},                 {"shots", shots},
                     {"generator", generator},       {"n_subdivisions", slots.size()}};
    json arr = json::array();
    for (const BeatSlot& s : slots)
        arr.push_back({{"subdivision_index", s.subdivision_index},
                       {"sample_id", s.sample_id},
                       {"fidelity", s.fidelity}});
    j["slots"] = std::move(arr);
    return j.dump(indent);
}

BeatSchedule BeatSchedule::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    BeatSchedule s;
    const json& md = j.at("metadata");
    s.encoder_kind = md.at("encoder_kind").get<std::string>();
    s.layer_index = md.at("layer_index").get<int>();
    s.seed = md.at("seed").get<std::uint64_t>();
    s.shots = md.at("shots").get<std::uint64_t>();
    s.generator = md.at("generator").get<std::string>();
    for (const json& slot : j.at("slots"))
        s.slots.push_back({slot.at("subdivision_index").get<int>(),
                           slot.at("sample_id").get<std::string>(),
                           slot.at("fidelity").get<double>()});
    return s;
}

} // namespace quiko::decode
