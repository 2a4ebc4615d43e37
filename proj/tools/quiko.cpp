#include "quiko/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace quiko;

int main(int argc, char** argv) {
    CLI::App app{"QuiKo: quantum beat generation from audio input"};
    app.require_subcommand(1);

    cli::ProjectConfig cfg;
    std::string noise_flag = "off";

    // prepare-db
    auto* prep = app.add_subcommand("prepare-db", "Build a sample database from a directory of WAVs");
    std::string prep_dir;
    std::string prep_out = "db.json";
    prep->add_option("dir", prep_dir, "Directory containing .wav samples")->required();
    prep->add_option("--out", prep_out, "Output database path");
    prep->add_option("--shots", cfg.shots, "Shots per sample circuit");
    prep->add_option("--seed", cfg.seed, "Root seed");

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a beat schedule from an input WAV");
    std::string gen_wav, gen_db;
    std::string gen_out = "schedule.json";
    std::string gen_layers = "layer_table.json";
    gen->add_option("input", gen_wav, "Input WAV file")->required();
    gen->add_option("--db", gen_db, "Database JSON from prepare-db")->required();
    gen->add_option("--encoder", cfg.encoder_kind, "Encoder kind")
        ->check(CLI::IsMember({"static", "pkbse"}));
    gen->add_option("--layer", cfg.layer_index, "Layer index to schedule");
    gen->add_option("--shots", cfg.shots, "Shots for the encoder circuit");
    gen->add_option("--seed", cfg.seed, "Root seed");
    gen->add_option("--noise", noise_flag, "Noise model on|off")
        ->check(CLI::IsMember({"on", "off"}));
    gen->add_flag("--exact", cfg.exact, "Use exact probabilities instead of sampling");
    gen->add_option("--subdivisions", cfg.audio.n_subdivisions, "Subdivisions per measure");
    gen->add_option("--out", gen_out, "Beat schedule output path");
    gen->add_option("--layers", gen_layers, "Layer table output path");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Run an analysis protocol");
    std::string ana_kind, ana_config;
    std::string ana_out = ".";
    ana->add_option("kind", ana_kind, "expressibility | spinal-kld | compare")->required();
    ana->add_option("--config", ana_config, "Analysis config JSON")->required();
    ana->add_option("--out", ana_out, "Output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.noise.enabled = (noise_flag == "on");
        if (prep->parsed()) {
            const cli::DatabaseFile db = cli::cmd_prepare_db(prep_dir, cfg);
            cli::write_text_file(prep_out, db.to_json_string(2));
            std::cout << "wrote " << prep_out << " (" << db.entries.size() << " samples)\n";
        } else if (gen->parsed()) {
            const cli::DatabaseFile db =
                cli::DatabaseFile::from_json_string(cli::read_text_file(gen_db));
            const cli::GenerateResult result = cli::cmd_generate(gen_wav, db, cfg);
            cli::write_text_file(gen_out, result.schedule.to_json_string(2));
            cli::write_text_file(gen_layers, result.table.to_json_string(2));
            std::cout << "wrote " << gen_out << " and " << gen_layers << "\n";
        } else if (ana->parsed()) {
            for (const std::string& path : cli::cmd_analyze(ana_kind, ana_config, ana_out))
                std::cout << "wrote " << path << "\n";
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
