#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hqc/harness.hpp"
#include "hqc/model_io.hpp"
#include "hqc/optim.hpp"

namespace hqc::harness {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_datasets(const Dataset& train, const Dataset& test) {
    if (train.X.empty() || test.X.empty()) {
        throw ConfigError("both train and test datasets must be non-empty");
    }
    if (train.X.cols != test.X.cols) {
        throw ConfigError("train and test feature widths differ");
    }
    if (train.X.rows != train.y.size() || test.X.rows != test.y.size()) {
        throw ConfigError("dataset rows and labels are misaligned");
    }
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

// Optional CSV of precomputed rows: model,accuracy,precision,recall,f1,auc
// with the four rate metrics as percentages and auc in [0, 1].
std::vector<MetricRow> read_external_rows(const std::string& path, std::uint64_t seed) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open external baselines file '" + path + "'");
    }
    std::vector<MetricRow> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line.rfind("model,", 0) == 0) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (cells.size() != 6) {
            throw IngestError(path + ":" + std::to_string(line_no) +
                              ": expected model,accuracy,precision,recall,f1,auc");
        }
        try {
            MetricRow row;
            row.model = cells[0];
            row.provenance = "external";
            row.seed = seed;
            row.summary.accuracy = std::stod(cells[1]) / 100.0;
            row.summary.precision = std::stod(cells[2]) / 100.0;
            row.summary.recall = std::stod(cells[3]) / 100.0;
            row.summary.f1 = std::stod(cells[4]) / 100.0;
            row.auc = std::stod(cells[5]);
            rows.push_back(std::move(row));
        } catch (const std::exception&) {
            throw IngestError(path + ":" + std::to_string(line_no) + ": unparseable number");
        }
    }
    return rows;
}

// Shot-based score evaluation for the robustness mode: one seeded sampling
// stream per test row, derived from the run seed and the row index.
std::vector<double> sampled_scores(const vqc::VqcModel& model, const Matrix& X,
                                   std::uint64_t shots, std::uint64_t seed) {
    std::vector<double> scores(X.rows);
    for (std::size_t r = 0; r < X.rows; ++r) {
        const auto fm = circuits::build_feature_map(model.feature_map, X.row(r));
        const auto an = circuits::build_ansatz(model.ansatz, model.theta);
        auto state = qsim::zero_state(model.feature_map.n_qubits);
        qsim::apply_circuit(state, fm);
        qsim::apply_circuit(state, an);
        const std::uint64_t row_seed = seed ^ (0x9E3779B97F4A7C15ULL * (r + 1));
        scores[r] = qsim::sample_z(state, model.observable.qubit, shots, row_seed);
    }
    return scores;
}

}  // namespace

ClassicalStageResult run_classical_stage(const RunConfig& config, const Dataset& train,
                                         const Dataset& test) {
    check_datasets(train, test);
    ClassicalStageResult result;

    const auto t0 = Clock::now();
    Matrix train_X = train.X;
    Matrix test_X = test.X;
    if (config.use_scaler) {
        result.scaler = preprocess::fit_scaler(train.X);
        train_X = preprocess::transform_scaler(result.scaler, train.X);
        test_X = preprocess::transform_scaler(result.scaler, test.X);
    }

    baseline::LogisticFitConfig fit;
    fit.l2_strength = config.logistic_l2;
    fit.max_epochs = config.logistic_epochs;
    fit.learning_rate = config.logistic_lr;
    fit.seed = config.seed;
    result.model = baseline::fit_logistic(train_X, train.y, fit);
    result.train_seconds = seconds_since(t0);

    const auto probs = baseline::predict_proba(result.model, test_X);
    std::vector<int> preds(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) preds[i] = probs[i] >= 0.5 ? 1 : 0;

    MetricRow row;
    row.model = "logistic";
    row.seed = config.seed;
    row.summary = metrics::summary(metrics::confusion(test.y, preds));
    result.logistic_roc = metrics::roc_auc(test.y, probs, metrics::PositiveDirection::Higher);
    row.auc = result.logistic_roc.auc;
    result.logistic_row = std::move(row);

    if (!config.external_baselines.empty()) {
        if (std::filesystem::exists(config.external_baselines)) {
            result.external_rows = read_external_rows(config.external_baselines, config.seed);
        } else {
            result.notes.push_back("external baselines file '" + config.external_baselines +
                                   "' not found; rows omitted");
        }
    }
    return result;
}

HybridStageResult run_hybrid_stage(const RunConfig& config, const Dataset& train,
                                   const Dataset& test) {
    check_datasets(train, test);
    validate(config);
    const int max_components = static_cast<int>(std::min(train.X.rows, train.X.cols));
    for (int n : config.qubit_counts) {
        if (config.use_pca && n > max_components) {
            throw ConfigError("qubit count " + std::to_string(n) +
                              " exceeds min(features, train rows) = " +
                              std::to_string(max_components));
        }
        if (!config.use_pca && static_cast<int>(train.X.cols) != n) {
            throw ConfigError("with use_pca = false the feature width must equal the qubit count");
        }
    }

    HybridStageResult result;
    Matrix train_scaled = train.X;
    Matrix test_scaled = test.X;
    if (config.use_scaler) {
        result.scaler = preprocess::fit_scaler(train.X);
        train_scaled = preprocess::transform_scaler(result.scaler, train.X);
        test_scaled = preprocess::transform_scaler(result.scaler, test.X);
    }

    for (std::size_t idx = 0; idx < config.qubit_counts.size(); ++idx) {
        const int n = config.qubit_counts[idx];
        VqcRunRecord record;
        record.n_qubits = n;
        record.budget = config.budgets[idx];

        Matrix train_enc = train_scaled;
        Matrix test_enc = test_scaled;
        if (config.use_pca) {
            auto pca = preprocess::fit_pca(train_scaled, n);
            const auto table = preprocess::cumulative_variance_report(pca);
            result.variance_table.emplace_back(n, table.back().second);
            train_enc = preprocess::transform_pca(pca, train_scaled);
            test_enc = preprocess::transform_pca(pca, test_scaled);
            result.pca_models.push_back(std::move(pca));
        }

        vqc::VqcModel shape;
        shape.feature_map.n_qubits = n;
        shape.feature_map.reps = config.feature_map_reps;
        shape.feature_map.phase_convention = config.phase_convention;
        shape.ansatz.n_qubits = n;
        shape.ansatz.reps = config.ansatz_reps;

        optim::OptimizerConfig opt;
        opt.max_evaluations = config.budgets[idx];
        opt.seed = config.seed;

        const auto t0 = Clock::now();
        try {
            auto outcome = vqc::train(shape, train_enc, train.y, opt, config.seed);
            record.train_seconds = seconds_since(t0);
            record.log = std::move(outcome.log);

            std::vector<double> scores;
            if (config.shots > 0) {
                scores = sampled_scores(outcome.model, test_enc, config.shots, config.seed);
            } else {
                scores = vqc::decision_scores(outcome.model, outcome.model.theta, test_enc);
            }
            std::vector<int> preds(scores.size());
            for (std::size_t i = 0; i < scores.size(); ++i) {
                preds[i] = vqc::predict_from_score(scores[i]);
            }
            record.row.model = "vqc_" + std::to_string(n) + "q";
            record.row.n_qubits = n;
            record.row.seed = config.seed;
            record.row.budget = config.budgets[idx];
            record.row.summary = metrics::summary(metrics::confusion(test.y, preds));
            record.roc = metrics::roc_auc(test.y, scores, metrics::PositiveDirection::Lower);
            record.row.auc = record.roc.auc;
        } catch (const std::exception& e) {
            // One failed sweep entry degrades the report, not the run.
            record.failed = true;
            record.error = e.what();
            record.train_seconds = seconds_since(t0);
            result.notes.push_back("vqc training at " + std::to_string(n) +
                                   " qubits failed: " + record.error);
        }
        result.runs.push_back(std::move(record));
    }
    return result;
}

RunReport execute(const RunConfig& config, bool classical, bool hybrid) {
    validate(config);

    IngestStats stats;
    Dataset train, test;
    if (config.synthetic) {
        std::tie(train, test) = synth_dataset(config.synth_samples, config.synth_features,
                                              config.synth_separation, config.seed);
    } else {
        std::tie(train, test) = ingest_csv(config.train_csv, config.test_csv,
                                           config.label_column, &stats);
    }

    RunReport report;
    report.config = describe(config);
    report.dataset_provenance = config.synthetic ? "synthetic" : "csv";
    report.train_rows = train.X.rows;
    report.test_rows = test.X.rows;
    report.feature_count = train.X.cols;
    if (stats.rejected_rows > 0) {
        report.notes.push_back(std::to_string(stats.rejected_rows) + " rows rejected at ingest");
        for (const auto& d : stats.diagnostics) report.notes.push_back(d);
    }

    if (classical) {
        const auto t0 = Clock::now();
        auto stage = run_classical_stage(config, train, test);
        report.timings_seconds["classical_stage"] = seconds_since(t0);
        report.timings_seconds["logistic_train"] = stage.train_seconds;
        report.roc_curves["logistic"] = stage.logistic_roc;
        report.rows.push_back(stage.logistic_row);
        for (auto& row : stage.external_rows) report.rows.push_back(std::move(row));
        for (auto& n : stage.notes) report.notes.push_back(std::move(n));
        if (config.save_models) {
            const auto dir = std::filesystem::path(config.out_dir) / "models";
            std::filesystem::create_directories(dir);
            if (config.use_scaler) save_scaler(stage.scaler, (dir / "scaler.txt").string());
            save_logistic(stage.model, (dir / "logistic.txt").string());
        }
    }

    if (hybrid) {
        const auto t0 = Clock::now();
        auto stage = run_hybrid_stage(config, train, test);
        report.timings_seconds["hybrid_stage"] = seconds_since(t0);
        report.variance_table = stage.variance_table;
        for (auto& record : stage.runs) {
            if (record.failed) continue;
            report.timings_seconds[record.row.model + "_train"] = record.train_seconds;
            report.roc_curves[record.row.model] = record.roc;
            report.recall_vs_qubits.emplace_back(record.n_qubits, record.row.summary.recall);
            report.cost_histories[record.n_qubits] = record.log.cost_history;
            report.rows.push_back(record.row);
        }
        for (auto& n : stage.notes) report.notes.push_back(std::move(n));
        if (config.save_models) {
            const auto dir = std::filesystem::path(config.out_dir) / "models";
            std::filesystem::create_directories(dir);
            for (std::size_t i = 0; i < stage.pca_models.size(); ++i) {
                const auto name = "pca_" + std::to_string(config.qubit_counts[i]) + "q.txt";
                save_pca(stage.pca_models[i], (dir / name).string());
            }
        }
    }
    return report;
}

}  // namespace hqc::harness
