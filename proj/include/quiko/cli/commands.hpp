#pragma once

#include "quiko/analysis/analysis.hpp"
#include "quiko/audio/features.hpp"
#include "quiko/decode/decode.hpp"
#include "quiko/qsim/simulator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace quiko::cli {

struct ProjectConfig {
    audio::AudioPipelineConfig audio{};
    std::uint64_t shots = 1024;
    std::uint64_t seed = 0;
    qsim::NoiseConfig noise{};
    std::string encoder_kind = "static";
    int layer_index = 0;
    bool exact = false; // exact probabilities instead of sampling

    void validate() const; // rejects parameters violating module preconditions
};

struct DatabaseEntry {
    std::string sample_id;
    std::string source;
    audio::EncodingMatrix matrix; // 1-subdivision matrix for samples
    decode::SampleDistribution distribution;
};

struct DatabaseFile {
    std::string version = "1";
    std::string generator;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
    std::vector<DatabaseEntry> entries;

    std::vector<decode::SampleDistribution> distributions() const;
    std::string to_json_string(int indent = 2) const;
    static DatabaseFile from_json_string(const std::string& text);
};

// Scans `dir` for .wav files (sorted by filename), extracts one feature
// triple per band, runs each sample circuit and stores the normalized
// distribution. Unreadable files are reported on stderr and skipped; throws
// only if every file fails.
DatabaseFile cmd_prepare_db(const std::string& dir, const ProjectConfig& cfg);

struct GenerateResult {
    audio::EncodingMatrix matrix;
    decode::LayerTable table;
    decode::BeatSchedule schedule;
};

GenerateResult cmd_generate(const std::string& wav_path, const DatabaseFile& db,
                            const ProjectConfig& cfg);

// kind is one of "expressibility", "spinal-kld", "compare"; reads the JSON
// config and writes report JSON (+ CSV where applicable) into out_dir.
// Returns the list of files written.
std::vector<std::string> cmd_analyze(const std::string& kind, const std::string& config_path,
                                     const std::string& out_dir);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace quiko::cli
