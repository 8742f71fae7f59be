#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hqc/baseline.hpp"
#include "hqc/circuits.hpp"
#include "hqc/common.hpp"
#include "hqc/metrics.hpp"
#include "hqc/preprocess.hpp"
#include "hqc/vqc.hpp"

namespace hqc::harness {

// Process exit codes used by the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIngest = 2;
inline constexpr int kExitRuntime = 3;

struct Dataset {
    Matrix X;
    std::vector<int> y;
    std::string split_tag;  // "train" or "test"
    std::vector<std::string> feature_names;
};

struct IngestStats {
    std::size_t rejected_rows = 0;
    std::vector<std::string> diagnostics;  // first few reject reasons
};

// Parses one CSV with a header row; every non-label column must be a decimal
// real, the label column must be 0 or 1. Rows that fail to parse are dropped
// and counted.
Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& split_tag, IngestStats* stats = nullptr);

// Loads train and test, reordering test columns to the train feature order;
// mismatched feature sets raise an IngestError naming the column.
std::pair<Dataset, Dataset> ingest_csv(const std::string& train_path,
                                       const std::string& test_path,
                                       const std::string& label_column,
                                       IngestStats* stats = nullptr);

// Two isotropic Gaussian blobs whose means sit `class_separation` apart
// along the first feature axis; balanced classes, seeded shuffle, 80/20
// train/test split.
std::pair<Dataset, Dataset> synth_dataset(int n_samples, int n_features,
                                          double class_separation, std::uint64_t seed);

void write_dataset_csv(const Dataset& ds, const std::string& path,
                       const std::string& label_column);

struct RunConfig {
    std::uint64_t seed = 42;
    std::vector<int> qubit_counts{4, 8, 12};
    std::vector<int> budgets{100, 80, 80};  // objective evaluations per qubit count
    int feature_map_reps = 2;
    int ansatz_reps = 3;
    circuits::PhaseConvention phase_convention = circuits::PhaseConvention::Paper;
    bool use_scaler = true;
    bool use_pca = true;
    // When positive, min-max rescale the encoded features (fitted on train)
    // onto [-angle_range, +angle_range] radians before the feature map.
    // 0 disables the step.
    double angle_range = 0.0;
    std::uint64_t shots = 0;  // 0 = exact expectations; >0 samples at evaluation time
    bool synthetic = false;
    int synth_samples = 400;
    int synth_features = 16;
    double synth_separation = 6.0;
    std::string train_csv;
    std::string test_csv;
    std::string label_column = "label";
    std::string external_baselines;  // optional CSV of precomputed metric rows
    std::string out_dir = "out";
    double logistic_l2 = 1.0;
    int logistic_epochs = 500;
    double logistic_lr = 0.1;
    bool save_models = false;
};

// `key = value` lines, '#' comments; unknown keys are errors.
RunConfig parse_config_file(const std::string& path);
void validate(const RunConfig& config);
std::map<std::string, std::string> describe(const RunConfig& config);

struct MetricRow {
    std::string model;
    int n_qubits = 0;  // 0 for classical models
    std::string provenance = "trained";  // or "external"
    std::uint64_t seed = 0;
    int budget = 0;  // objective evaluations, VQC rows only
    metrics::Summary summary;
    double auc = 0.0;
};

struct ClassicalStageResult {
    MetricRow logistic_row;
    metrics::RocCurve logistic_roc;
    std::vector<MetricRow> external_rows;
    preprocess::ScalerModel scaler;
    baseline::LogisticModel model;
    double train_seconds = 0.0;
    std::vector<std::string> notes;
};

struct VqcRunRecord {
    int n_qubits = 0;
    int budget = 0;
    bool failed = false;
    std::string error;
    MetricRow row;
    metrics::RocCurve roc;
    vqc::TrainLog log;
    double train_seconds = 0.0;
};

struct HybridStageResult {
    std::vector<VqcRunRecord> runs;
    std::vector<std::pair<int, double>> variance_table;  // (components, cumulative %)
    preprocess::ScalerModel scaler;
    std::vector<preprocess::PcaModel> pca_models;      // aligned with qubit_counts
    std::vector<preprocess::RangeModel> range_models;  // empty unless angle_range > 0
    std::vector<std::string> notes;
};

ClassicalStageResult run_classical_stage(const RunConfig& config, const Dataset& train,
                                         const Dataset& test);
HybridStageResult run_hybrid_stage(const RunConfig& config, const Dataset& train,
                                   const Dataset& test);

struct RunReport {
    int schema_version = 1;
    std::map<std::string, std::string> config;
    std::string dataset_provenance;  // "synthetic" or "csv"
    std::size_t train_rows = 0;
    std::size_t test_rows = 0;
    std::size_t feature_count = 0;
    std::vector<MetricRow> rows;
    std::vector<std::pair<int, double>> variance_table;
    std::vector<std::pair<int, double>> recall_vs_qubits;  // (qubits, recall fraction)
    std::map<int, std::vector<std::pair<int, double>>> cost_histories;
    std::map<std::string, metrics::RocCurve> roc_curves;
    std::map<std::string, double> timings_seconds;
    std::vector<std::string> notes;
};

// Resolves the dataset (CSV or synthetic) and runs the requested stages.
RunReport execute(const RunConfig& config, bool classical, bool hybrid);

// Writes report.json, metrics.csv, pca_variance.csv, recall_vs_qubits.csv,
// one roc_<model>.csv per model and one cost_history_<n>q.csv per qubit
// count. Fails before writing anything if the directory is unusable.
void emit_report(const RunReport& report, const std::string& out_dir);

RunReport load_report_json(const std::string& path);
std::string report_to_json(const RunReport& report);

}  // namespace hqc::harness
