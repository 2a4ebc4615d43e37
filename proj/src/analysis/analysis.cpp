#include "quiko/analysis/analysis.hpp"

#include "quiko/common/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace quiko::analysis {

using nlohmann::json;

double kld(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("kld: support size mismatch");
    constexpr double kFloor = 1e-12;
    std::vector<double> qs(q.size());
    double qt = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        qs[i] = std::max(q[i], kFloor);
        qt += qs[i];
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0)
            continue;
        d += p[i] * std::log(p[i] / (qs[i] / qt));
    }
    return std::max(d, 0.0);
}

audio::EncodingMatrix random_encoding_matrix(std::mt19937_64& rng, int n_bands,
                                             int n_subdivisions) {
    audio::EncodingMatrix m = audio::EncodingMatrix::zeros("random", n_bands, n_subdivisions);
    for (auto& t : m.entries) {
        t.theta = std::numbers::pi * u01(rng);
        t.phi = 2.0 * std::numbers::pi * u01(rng);
        t.lam = 2.0 * std::numbers::pi * u01(rng);
    }
    return m;
}

namespace {

std::vector<double> probs_from_weights(const std::map<std::string, double>& weights, int bits) {
    std::vector<double> probs(std::size_t(1) << bits, 0.0);
    double total = 0.0;
    for (const auto& [key, w] : weights) {
        std::size_t idx = 0;
        for (char c : key)
            idx = (idx << 1) | (c == '1');
        probs[idx] += w;
        total += w;
    }
    if (total > 0.0)
        for (double& v : probs)
            v /= total;
    return probs;
}

std::map<std::string, double> run_circuit_weights(const qsim::Circuit& circuit,
                                                  const AnalysisRunConfig& run,
                                                  std::uint64_t shot_seed) {
    if (run.exact)
        return qsim::exact_probabilities(circuit);
    std::map<std::string, double> weights;
    for (const auto& [key, count] : qsim::run_shots(circuit, run.shots, run.noise, shot_seed).counts)
        weights[key] = static_cast<double>(count);
    return weights;
}

std::string sample_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "s%03d", index);
    return buf;
}

} // namespace

std::vector<decode::SampleDistribution> random_database(int db_size, std::uint64_t seed,
                                                        const AnalysisRunConfig& run,
                                                        bool clones) {
    if (db_size < 1)
        throw std::invalid_argument("random_database: db_size must be >= 1");
    std::vector<decode::SampleDistribution> db;
    for (int i = 0; i < db_size; ++i) {
        auto rng = make_engine(seed, streams::kDatabase, clones ? 0 : std::uint64_t(i));
        std::vector<audio::FeatureTriple> triples(3);
        for (auto& t : triples) {
            t.theta = std::numbers::pi * u01(rng);
            t.phi = 2.0 * std::numbers::pi * u01(rng);
            t.lam = 2.0 * std::numbers::pi * u01(rng);
        }
        const qsim::Circuit c = enc::database_circuit(triples);
        const auto weights =
            run_circuit_weights(c, run, derive_seed(seed, streams::kDatabaseShots, i));
        db.push_back({sample_name(i), probs_from_weights(weights, 3)});
    }
    return db;
}

ExpressibilityCurve expressibility_curve(const ExpressibilityConfig& cfg) {
    if (cfg.db_size < 2)
        throw std::invalid_argument("expressibility_curve: db_size must be >= 2");
    if (cfg.M < 1)
        throw std::invalid_argument("expressibility_curve: M must be >= 1");
    if (cfg.run.exact && cfg.run.noise.enabled)
        throw std::invalid_argument("expressibility_curve: exact mode is noiseless only");

    const auto db = random_database(cfg.db_size, cfg.seed, cfg.run, cfg.clone_database);

    // occupancy[layer][sample] counts, pooled over trials and subdivisions
    std::vector<std::vector<double>> occupancy(cfg.db_size,
                                               std::vector<double>(cfg.db_size, 0.0));

    for (int m = 0; m < cfg.M; ++m) {
        auto rng = make_engine(cfg.seed, streams::kTrialInput, m);
        const audio::EncodingMatrix matrix = random_encoding_matrix(rng, 3, cfg.n_subdivisions);
        const enc::QuikoCircuitBundle bundle = enc::build_encoder(cfg.encoder_kind, matrix);
        const auto weights = run_circuit_weights(
            bundle.circuit, cfg.run, derive_seed(cfg.seed, streams::kTrialShots, m));
        const auto conditionals = decode::conditional_timbre(weights, cfg.n_subdivisions);
        const decode::LayerTable table = decode::layer_table(conditionals, db);
        for (int s = 0; s < table.n_subdivisions; ++s)
            for (int layer = 0; layer < table.n_layers; ++layer) {
                const std::string& id = table.columns[s][layer].sample_id;
                // ids are s000..s{N-1}; index is the numeric suffix
                const int idx = std::stoi(id.substr(1));
                occupancy[layer][idx] += 1.0;
            }
    }

    const std::vector<double> uniform(cfg.db_size, 1.0 / cfg.db_size);
    ExpressibilityCurve curve;
    curve.config = cfg;
    for (int layer = 0; layer < cfg.db_size; ++layer) {
        double total = 0.0;
        for (double v : occupancy[layer])
            total += v;
        std::vector<double> dist(cfg.db_size, 0.0);
        for (int i = 0; i < cfg.db_size; ++i)
            dist[i] = occupancy[layer][i] / total;
        curve.values.push_back(kld(dist, uniform));
    }
    return curve;
}

KldReport spinal_kld_report(const SpinalKldConfig& cfg) {
    if (cfg.M < 1)
        throw std::invalid_argument("spinal_kld_report: M must be >= 1");
    if (cfg.run.exact && cfg.run.noise.enabled)
        throw std::invalid_argument("spinal_kld_report: exact mode is noiseless only");

    KldReport report;

    const int n_sub = cfg.n_subdivisions;
    std::vector<double> avg_static(n_sub, 0.0), avg_pkbse(n_sub, 0.0);
    for (int m = 0; m < cfg.M; ++m) {
        // Paired trials: both encoders see the same random input matrix.
        auto rng = make_engine(cfg.seed, streams::kTrialInput, m);
        const audio::EncodingMatrix matrix = random_encoding_matrix(rng, 3, n_sub);
        for (const char* kind : {"static", "pkbse"}) {
            const enc::QuikoCircuitBundle bundle = enc::build_encoder(kind, matrix);
            const auto weights = run_circuit_weights(
                bundle.circuit, cfg.run, derive_seed(cfg.seed, streams::kTrialShots, m));
            const std::vector<double> marginal = decode::spinal_marginal(weights, n_sub);
            auto& avg = (std::string(kind) == "static") ? avg_static : avg_pkbse;
            for (int s = 0; s < n_sub; ++s)
                avg[s] += marginal[s] / cfg.M;
        }
    }

    const int spinal_bits = std::countr_zero(unsigned(n_sub));
    if (cfg.run.exact) {
        report.reference = "equal-superposition (exact)";
        report.reference_distribution.assign(n_sub, 1.0 / n_sub);
    } else {
        report.reference = "equal-superposition (sampled)";
        const qsim::Circuit ref = enc::equal_superposition_circuit(spinal_bits);
        const auto hist =
            qsim::run_shots(ref, cfg.run.shots, cfg.run.noise,
                            derive_seed(cfg.seed, streams::kReference, 0));
        std::map<std::string, double> weights;
        for (const auto& [key, count] : hist.counts)
            weights[key] = static_cast<double>(count);
        report.reference_distribution = probs_from_weights(weights, spinal_bits);
    }

    report.averaged_static = avg_static;
    report.averaged_pkbse = avg_pkbse;
    report.d_static = kld(avg_static, report.reference_distribution);
    report.d_pkbse = kld(avg_pkbse, report.reference_distribution);
    return report;
}

std::string ExpressibilityCurve::to_json_string(int indent) const {
    json j;
    j["values"] = values;
    j["config"] = {{"db_size", config.db_size},
                   {"M", config.M},
                   {"encoder_kind", config.encoder_kind},
                   {"seed", config.seed},
                   {"mode", config.run.exact ? "exact" : "shots"},
                   {"shots", config.run.shots},
                   {"noise", config.run.noise.enabled},
                   {"clone_database", config.clone_database},
                   {"n_subdivisions", config.n_subdivisions},
                   {"generator", kGeneratorName}};
    return j.dump(indent);
}

std::string ExpressibilityCurve::to_csv_string() const {
    std::string out = "layer,value\n";
    char buf[64];
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", i, values[i]);
        out += buf;
    }
    return out;
}

std::string KldReport::to_json_string(int indent) const {
    json j;
    j["d_static"] = d_static;
    j["d_pkbse"] = d_pkbse;
    j["reference"] = reference;
    j["reference_distribution"] = reference_distribution;
    j["averaged_distributions"] = {{"static", averaged_static}, {"pkbse", averaged_pkbse}};
    j["generator"] = kGeneratorName;
    return j.dump(indent);
}

std::string KldReport::to_csv_string() const {
    char buf[128];
    std::string out = "encoder,kld\n";
    std::snprintf(buf, sizeof(buf), "static,%.12g\n", d_static);
    out += buf;
    std::snprintf(buf, sizeof(buf), "pkbse,%.12g\n", d_pkbse);
    out += buf;
    return out;
}

} // namespace quiko::analysis
