#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hqc/harness.hpp"
#include "hqc/optim.hpp"

namespace {

using hqc::harness::RunConfig;

// Flag values land here; only flags the user actually passed override the
// config file.
struct CliOverrides {
    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_dir;
    std::string train_csv, test_csv, label_column, external_baselines;
    bool synthetic = false;
    int synth_samples = 0, synth_features = 0;
    double synth_separation = 0.0;
    std::string qubits, budgets, phase_convention;
    int feature_map_reps = 0, ansatz_reps = 0;
    std::uint64_t shots = 0;
    bool use_scaler = true, use_pca = true, save_models = false;
};

void add_common_options(CLI::App* cmd, CliOverrides& o) {
    cmd->add_option("--config", o.config_path, "configuration file (key = value lines)");
    cmd->add_option("--seed", o.seed, "global random seed");
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--train-csv", o.train_csv, "training CSV path");
    cmd->add_option("--test-csv", o.test_csv, "test CSV path");
    cmd->add_option("--label-column", o.label_column, "label column name");
    cmd->add_option("--external-baselines", o.external_baselines,
                    "CSV of precomputed baseline metric rows");
    cmd->add_flag("--synthetic", o.synthetic, "generate synthetic data instead of reading CSVs");
    cmd->add_option("--synth-samples", o.synth_samples, "synthetic sample count");
    cmd->add_option("--synth-features", o.synth_features, "synthetic feature count");
    cmd->add_option("--synth-separation", o.synth_separation, "synthetic class separation");
    cmd->add_option("--qubits", o.qubits, "comma-separated qubit counts");
    cmd->add_option("--budgets", o.budgets, "comma-separated evaluation budgets");
    cmd->add_option("--feature-map-reps", o.feature_map_reps, "feature map repetitions");
    cmd->add_option("--ansatz-reps", o.ansatz_reps, "ansatz repetitions");
    cmd->add_option("--phase-convention", o.phase_convention, "paper or standard");
    cmd->add_option("--shots", o.shots, "samples per expectation at evaluation (0 = exact)");
    cmd->add_option("--use-scaler", o.use_scaler, "standardize features (true/false)");
    cmd->add_option("--use-pca", o.use_pca, "project features with pca (true/false)");
    cmd->add_flag("--save-models", o.save_models, "write fitted models under <out>/models");
}

std::vector<int> parse_list(const std::string& text, const char* what) {
    std::vector<int> values;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        try {
            values.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw hqc::ConfigError(std::string("bad ") + what + " list: '" + text + "'");
        }
    }
    return values;
}

RunConfig resolve(const CLI::App* cmd, const CliOverrides& o) {
    RunConfig config;
    if (cmd->count("--config")) {
        config = hqc::harness::parse_config_file(o.config_path);
    }
    if (cmd->count("--seed")) config.seed = o.seed;
    if (cmd->count("--out")) config.out_dir = o.out_dir;
    if (cmd->count("--train-csv")) config.train_csv = o.train_csv;
    if (cmd->count("--test-csv")) config.test_csv = o.test_csv;
    if (cmd->count("--label-column")) config.label_column = o.label_column;
    if (cmd->count("--external-baselines")) config.external_baselines = o.external_baselines;
    if (cmd->count("--synthetic")) config.synthetic = true;
    if (cmd->count("--synth-samples")) config.synth_samples = o.synth_samples;
    if (cmd->count("--synth-features")) config.synth_features = o.synth_features;
    if (cmd->count("--synth-separation")) config.synth_separation = o.synth_separation;
    if (cmd->count("--qubits")) config.qubit_counts = parse_list(o.qubits, "qubit");
    if (cmd->count("--budgets")) config.budgets = parse_list(o.budgets, "budget");
    if (cmd->count("--feature-map-reps")) config.feature_map_reps = o.feature_map_reps;
    if (cmd->count("--ansatz-reps")) config.ansatz_reps = o.ansatz_reps;
    if (cmd->count("--phase-convention")) {
        config.phase_convention = hqc::circuits::phase_convention_from_string(o.phase_convention);
    }
    if (cmd->count("--shots")) config.shots = o.shots;
    if (cmd->count("--use-scaler")) config.use_scaler = o.use_scaler;
    if (cmd->count("--use-pca")) config.use_pca = o.use_pca;
    if (cmd->count("--save-models")) config.save_models = true;
    return config;
}

int run_stages(const RunConfig& config, bool classical, bool hybrid) {
    auto report = hqc::harness::execute(config, classical, hybrid);
    hqc::harness::emit_report(report, config.out_dir);
    std::cout << "report written to " << config.out_dir << " ("
              << report.rows.size() << " metric rows)\n";
    for (const auto& note : report.notes) std::cout << "note: " << note << '\n';
    return hqc::harness::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hybrid quantum-classical classification toolkit"};
    app.require_subcommand(1);

    CliOverrides o;
    auto* run_cmd = app.add_subcommand("run", "classical stage and qubit-sweep hybrid stage");
    add_common_options(run_cmd, o);
    auto* classical_cmd = app.add_subcommand("classical", "classical baseline stage only");
    add_common_options(classical_cmd, o);
    auto* hybrid_cmd = app.add_subcommand("hybrid", "hybrid qubit-sweep stage only");
    add_common_options(hybrid_cmd, o);

    auto* synth_cmd = app.add_subcommand("synth", "write a synthetic dataset as CSVs");
    std::string synth_out = "data";
    std::uint64_t synth_seed = 42;
    int synth_samples = 400, synth_features = 16;
    double synth_separation = 6.0;
    std::string synth_label = "label";
    synth_cmd->add_option("--out", synth_out, "directory for train.csv/test.csv");
    synth_cmd->add_option("--seed", synth_seed, "random seed");
    synth_cmd->add_option("--samples", synth_samples, "total sample count");
    synth_cmd->add_option("--features", synth_features, "feature count");
    synth_cmd->add_option("--separation", synth_separation, "class mean distance");
    synth_cmd->add_option("--label-column", synth_label, "label column name");

    auto* report_cmd = app.add_subcommand("report", "re-emit CSVs from a saved report.json");
    std::string report_from, report_out = "out";
    report_cmd->add_option("--from", report_from, "existing report.json")->required();
    report_cmd->add_option("--out", report_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? hqc::harness::kExitOk : hqc::harness::kExitUsage;
    }

    try {
        if (synth_cmd->parsed()) {
            auto [train, test] = hqc::harness::synth_dataset(synth_samples, synth_features,
                                                             synth_separation, synth_seed);
            std::filesystem::create_directories(synth_out);
            hqc::harness::write_dataset_csv(train, synth_out + "/train.csv", synth_label);
            hqc::harness::write_dataset_csv(test, synth_out + "/test.csv", synth_label);
            std::cout << "wrote " << synth_out << "/train.csv (" << train.X.rows << " rows) and "
                      << synth_out << "/test.csv (" << test.X.rows << " rows)\n";
            return hqc::harness::kExitOk;
        }
        if (report_cmd->parsed()) {
            auto report = hqc::harness::load_report_json(report_from);
            hqc::harness::emit_report(report, report_out);
            std::cout << "report re-emitted to " << report_out << '\n';
            return hqc::harness::kExitOk;
        }
        if (run_cmd->parsed()) return run_stages(resolve(run_cmd, o), true, true);
        if (classical_cmd->parsed()) return run_stages(resolve(classical_cmd, o), true, false);
        if (hybrid_cmd->parsed()) return run_stages(resolve(hybrid_cmd, o), false, true);
    } catch (const hqc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return hqc::harness::kExitUsage;
    } catch (const hqc::IngestError& e) {
        std::cerr << "ingest error: " << e.what() << '\n';
        return hqc::harness::kExitIngest;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hqc::harness::kExitRuntime;
    }
    return hqc::harness::kExitUsage;
}
