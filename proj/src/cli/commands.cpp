#include "quiko/cli/commands.hpp"

#include "quiko/audio/wav.hpp"
#include "quiko/common/rng.hpp"
#include "quiko/encoding/encoders.hpp"
#include "quiko/qcompare/comparator.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace quiko::cli {

namespace fs = std::filesystem;
using nlohmann::json;

void ProjectConfig::validate() const {
    if (shots < 1)
        throw std::invalid_argument("config: shots must be >= 1");
    noise.validate();
    if (exact && noise.enabled)
        throw std::invalid_argument("config: exact mode is noiseless only");
    if (encoder_kind != "static" && encoder_kind != "pkbse")
        throw std::invalid_argument("config: unknown encoder kind: " + encoder_kind);
    if (layer_index < 0)
        throw std::invalid_argument("config: layer index must be >= 0");
    if (audio.n_bands != 3)
        throw std::invalid_argument("config: encoders require exactly 3 bands");
    if (encoder_kind == "pkbse" && audio.n_subdivisions != 8)
        throw std::invalid_argument("config: pkbse requires 8 subdivisions");
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

namespace {

std::vector<double> probs_from_counts(const std::map<std::string, std::uint64_t>& counts,
                                      std::uint64_t shots) {
    std::vector<double> probs(8, 0.0);
    for (const auto& [key, count] : counts) {
        std::size_t idx = 0;
        for (char c : key)
            idx = (idx << 1) | (c == '1');
        probs[idx] += double(count) / double(shots);
    }
    return probs;
}

std::vector<double> probs_from_exact(const std::map<std::string, double>& exact) {
    std::vector<double> probs(8, 0.0);
    for (const auto& [key, p] : exact) {
        std::size_t idx = 0;
        for (char c : key)
            idx = (idx << 1) | (c == '1');
        probs[idx] += p;
    }
    return probs;
}

} // namespace

std::vector<decode::SampleDistribution> DatabaseFile::distributions() const {
    std::vector<decode::SampleDistribution> out;
    out.reserve(entries.size());
    for (const DatabaseEntry& e : entries)
        out.push_back(e.distribution);
    return out;
}

DatabaseFile cmd_prepare_db(const std::string& dir, const ProjectConfig& cfg) {
    cfg.validate();

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".wav")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw std::runtime_error("prepare-db: no .wav files in " + dir);

    DatabaseFile db;
    db.generator = kGeneratorName;
    db.shots = cfg.shots;
    db.seed = cfg.seed;

    std::set<std::string> ids;
    std::vector<std::string> failures;
    std::uint64_t index = 0;
    for (const fs::path& path : files) {
        try {
            const audio::AudioBuffer buf = audio::load_wav(path.string());
            audio::AudioPipelineConfig acfg = cfg.audio;
            acfg.n_subdivisions = 1; // whole sample = one segment
            const std::string id = path.stem().string();
            if (!ids.insert(id).second)
                throw std::runtime_error("duplicate sample id: " + id);
            const audio::EncodingMatrix matrix = audio::extract_matrix(buf, acfg, id);
            std::vector<audio::FeatureTriple> triples;
            for (int b = 0; b < 3; ++b)
                triples.push_back(matrix.at(b, 0));
            const qsim::Circuit circuit = enc::database_circuit(triples);
            const auto hist = qsim::run_shots(circuit, cfg.shots, cfg.noise,
                                              derive_seed(cfg.seed, streams::kDatabase, index));
            DatabaseEntry e;
            e.sample_id = id;
            e.source = path.string();
            e.matrix = matrix;
            e.distribution = {id, probs_from_counts(hist.counts, hist.shots)};
            db.entries.push_back(std::move(e));
        } catch (const std::exception& ex) {
            failures.push_back(path.string() + ": " + ex.what());
            std::cerr << "prepare-db: skipping " << path.string() << ": " << ex.what() << "\n";
        }
        ++index;
    }
    if (db.entries.empty()) {
        std::string msg = "prepare-db: all files failed:";
        for (const std::string& f : failures)
            msg += "\n  " + f;
        throw std::runtime_error(msg);
    }
    return db;
}

GenerateResult cmd_generate(const std::string& wav_path, const DatabaseFile& db,
                            const ProjectConfig& cfg) {
    cfg.validate();
    if (db.entries.empty())
        throw std::invalid_argument("generate: empty database");
    if (cfg.layer_index >= static_cast<int>(db.entries.size()))
        throw std::invalid_argument("generate: layer index exceeds database size");

    const audio::AudioBuffer buf = audio::load_wav(wav_path);
    GenerateResult result;
    result.matrix = audio::extract_matrix(buf, cfg.audio, fs::path(wav_path).stem().string());

    const enc::QuikoCircuitBundle bundle = enc::build_encoder(cfg.encoder_kind, result.matrix);
    std::vector<decode::Conditional> conditionals;
    if (cfg.exact) {
        conditionals = decode::conditional_timbre(qsim::exact_probabilities(bundle.circuit),
                                                  cfg.audio.n_subdivisions);
    } else {
        const auto hist = qsim::run_shots(bundle.circuit, cfg.shots, cfg.noise, cfg.seed);
        conditionals = decode::conditional_timbre(hist, cfg.audio.n_subdivisions);
    }

    result.table = decode::layer_table(conditionals, db.distributions());
    result.schedule = decode::build_schedule(result.table, cfg.layer_index);
    result.schedule.encoder_kind = cfg.encoder_kind;
    result.schedule.seed = cfg.seed;
    result.schedule.shots = cfg.exact ? 0 : cfg.shots;
    result.schedule.generator = kGeneratorName;
    return result;
}

namespace {

qsim::NoiseConfig noise_from_json(const json& j) {
    qsim::NoiseConfig noise;
    if (j.contains("noise")) {
        const json& n = j.at("noise");
        noise.enabled = n.value("enabled", false);
        noise.p1 = n.value("p1", noise.p1);
        noise.p2 = n.value("p2", noise.p2);
        noise.p_readout = n.value("p_readout", noise.p_readout);
    }
    noise.validate();
    return noise;
}

analysis::AnalysisRunConfig run_from_json(const json& j) {
    analysis::AnalysisRunConfig run;
    run.exact = j.value("mode", std::string("exact")) == "exact";
    run.shots = j.value("shots", std::uint64_t(1024));
    run.noise = noise_from_json(j);
    return run;
}

} // namespace

std::vector<std::string> cmd_analyze(const std::string& kind, const std::string& config_path,
                                     const std::string& out_dir) {
    const json cfg = json::parse(read_text_file(config_path));
    fs::create_directories(out_dir);
    std::vector<std::string> written;
    const auto emit = [&](const std::string& name, const std::string& content) {
        const std::string path = (fs::path(out_dir) / name).string();
        write_text_file(path, content);
        written.push_back(path);
    };

    if (kind == "expressibility") {
        analysis::ExpressibilityConfig ecfg;
        ecfg.db_size = cfg.value("db_size", 8);
        ecfg.M = cfg.value("M", 50);
        ecfg.encoder_kind = cfg.value("encoder", std::string("static"));
        ecfg.seed = cfg.value("seed", std::uint64_t(0));
        ecfg.run = run_from_json(cfg);
        ecfg.clone_database = cfg.value("clone_database", false);
        const analysis::ExpressibilityCurve curve = analysis::expressibility_curve(ecfg);
        emit("expressibility.json", curve.to_json_string(2));
        emit("expressibility.csv", curve.to_csv_string());
    } else if (kind == "spinal-kld") {
        analysis::SpinalKldConfig scfg;
        scfg.M = cfg.value("M", 50);
        scfg.seed = cfg.value("seed", std::uint64_t(0));
        scfg.run = run_from_json(cfg);
        const analysis::KldReport report = analysis::spinal_kld_report(scfg);
        emit("spinal_kld.json", report.to_json_string(2));
        emit("spinal_kld.csv", report.to_csv_string());
    } else if (kind == "compare") {
        std::vector<qcompare::TrackSpec> tracks;
        for (const json& t : cfg.at("tracks")) {
            qcompare::TrackSpec spec;
            spec.track_id = t.at("track_id").get<std::string>();
            for (const json& triple : t.at("triples"))
                spec.bands.push_back({triple.at(0).get<double>(), triple.at(1).get<double>(),
                                      triple.at(2).get<double>()});
            tracks.push_back(std::move(spec));
        }
        const std::uint64_t seed = cfg.value("seed", std::uint64_t(0));
        const std::string encoder = cfg.value("encoder", std::string("static"));
        const int batch_size = cfg.value("batch_size", 2);
        const std::uint64_t shots = cfg.value("shots", std::uint64_t(1024));
        const qsim::NoiseConfig noise = noise_from_json(cfg);

        audio::EncodingMatrix matrix;
        if (cfg.value("input_matrix", std::string("zero")) == "random") {
            auto rng = make_engine(seed, streams::kTrialInput, 0);
            matrix = analysis::random_encoding_matrix(rng);
        } else {
            matrix = audio::EncodingMatrix::zeros("zero", 3, 8);
        }
        const enc::QuikoCircuitBundle bundle = enc::build_encoder(encoder, matrix);
        const qcompare::MatchReport report =
            qcompare::run_comparison(bundle, std::move(tracks), batch_size, shots, noise, seed);
        emit("compare_report.json", report.to_json_string(2));
    } else {
        throw std::invalid_argument("analyze: unknown kind: " + kind);
    }
    return written;
}

namespace {

json matrix_to_json(const audio::EncodingMatrix& m) {
    return json::parse(m.to_json_string());
}

} // namespace

std::string DatabaseFile::to_json_string(int indent) const {
    json j;
    j["version"] = version;
    j["generator"] = generator;
    j["shots"] = shots;
    j["seed"] = seed;
    json arr = json::array();
    for (const DatabaseEntry& e : entries) {
        json probs = json::array();
        for (double p : e.distribution.probs)
            probs.push_back(p);
        arr.push_back({{"sample_id", e.sample_id},
                       {"source", e.source},
                       {"matrix", matrix_to_json(e.matrix)},
                       {"distribution", std::move(probs)}});
    }
    j["entries"] = std::move(arr);
    return j.dump(indent);
}

DatabaseFile DatabaseFile::from_json_string(const std::string& text) {
    const json j = json::parse(text);
    DatabaseFile db;
    db.version = j.at("version").get<std::string>();
    db.generator = j.value("generator", std::string());
    db.shots = j.value("shots", std::uint64_t(0));
    db.seed = j.value("seed", std::uint64_t(0));
    std::set<std::string> ids;
    for (const json& e : j.at("entries")) {
        DatabaseEntry entry;
        entry.sample_id = e.at("sample_id").get<std::string>();
        if (!ids.insert(entry.sample_id).second)
            throw std::invalid_argument("database json: duplicate sample id " + entry.sample_id);
        entry.source = e.value("source", std::string());
        entry.matrix = audio::EncodingMatrix::from_json_string(e.at("matrix").dump());
        entry.distribution.sample_id = entry.sample_id;
        entry.distribution.probs = e.at("distribution").get<std::vector<double>>();
        double total = 0.0;
        for (double p : entry.distribution.probs)
            total += p;
        if (std::abs(total - 1.0) > 1e-6)
            throw std::invalid_argument("database json: distribution not normalized for " +
                                        entry.sample_id);
        db.entries.push_back(std::move(entry));
    }
    return db;
}

} // namespace quiko::cli
