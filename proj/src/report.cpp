#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "hqc/harness.hpp"

namespace hqc::harness {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, r.ptr};
}

// Two-decimal percentage, rounding halves away from zero.
std::string pct2(double fraction) {
    const double rounded = std::round(fraction * 10000.0) / 100.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", rounded);
    return buf;
}

std::string fixed4(double v) {
    const double rounded = std::round(v * 10000.0) / 10000.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", rounded);
    return buf;
}

std::string metrics_csv(const RunReport& report) {
    std::string out = "model,accuracy,precision,recall,f1,auc\n";
    for (const auto& row : report.rows) {
        out += row.model + ',' + pct2(row.summary.accuracy) + ',' + pct2(row.summary.precision) +
               ',' + pct2(row.summary.recall) + ',' + pct2(row.summary.f1) + ',' +
               fixed4(row.auc) + '\n';
    }
    return out;
}

std::string variance_csv(const RunReport& report) {
    std::string out = "components,cumulative_explained_variance_pct\n";
    for (const auto& [n, pct] : report.variance_table) {
        out += std::to_string(n) + ',' + pct2(pct / 100.0) + '\n';
    }
    return out;
}

std::string recall_csv(const RunReport& report) {
    std::string out = "qubits,recall_pct\n";
    for (const auto& [n, recall] : report.recall_vs_qubits) {
        out += std::to_string(n) + ',' + pct2(recall) + '\n';
    }
    return out;
}

std::string roc_csv(const metrics::RocCurve& curve) {
    std::string out = "fpr,tpr\n";
    for (const auto& [fpr, tpr] : curve.points) {
        out += fmt(fpr) + ',' + fmt(tpr) + '\n';
    }
    return out;
}

std::string cost_history_csv(const std::vector<std::pair<int, double>>& history) {
    std::string out = "evaluation,cost\n";
    for (const auto& [idx, cost] : history) {
        out += std::to_string(idx) + ',' + fmt(cost) + '\n';
    }
    return out;
}

json row_to_json(const MetricRow& row) {
    return json{{"model", row.model},
                {"n_qubits", row.n_qubits},
                {"provenance", row.provenance},
                {"seed", row.seed},
                {"budget", row.budget},
                {"accuracy", row.summary.accuracy},
                {"precision", row.summary.precision},
                {"precision_defined", row.summary.precision_defined},
                {"recall", row.summary.recall},
                {"f1", row.summary.f1},
                {"auc", row.auc}};
}

MetricRow row_from_json(const json& j) {
    MetricRow row;
    row.model = j.at("model").get<std::string>();
    row.n_qubits = j.at("n_qubits").get<int>();
    row.provenance = j.at("provenance").get<std::string>();
    row.seed = j.at("seed").get<std::uint64_t>();
    row.budget = j.at("budget").get<int>();
    row.summary.accuracy = j.at("accuracy").get<double>();
    row.summary.precision = j.at("precision").get<double>();
    row.summary.precision_defined = j.at("precision_defined").get<bool>();
    row.summary.recall = j.at("recall").get<double>();
    row.summary.f1 = j.at("f1").get<double>();
    row.auc = j.at("auc").get<double>();
    return row;
}

}  // namespace

std::string report_to_json(const RunReport& report) {
    json j;
    j["schema_version"] = report.schema_version;
    j["config"] = report.config;
    j["dataset"] = {{"provenance", report.dataset_provenance},
                    {"train_rows", report.train_rows},
                    {"test_rows", report.test_rows},
                    {"features", report.feature_count}};
    j["metrics"] = json::array();
    for (const auto& row : report.rows) j["metrics"].push_back(row_to_json(row));
    j["pca_variance"] = json::array();
    for (const auto& [n, pct] : report.variance_table) {
        j["pca_variance"].push_back({{"components", n}, {"cumulative_pct", pct}});
    }
    j["recall_vs_qubits"] = json::array();
    for (const auto& [n, recall] : report.recall_vs_qubits) {
        j["recall_vs_qubits"].push_back({{"qubits", n}, {"recall", recall}});
    }
    j["cost_histories"] = json::object();
    for (const auto& [n, history] : report.cost_histories) {
        json h = json::array();
        for (const auto& [idx, cost] : history) h.push_back({idx, cost});
        j["cost_histories"][std::to_string(n)] = std::move(h);
    }
    j["roc"] = json::object();
    for (const auto& [model, curve] : report.roc_curves) {
        json points = json::array();
        for (const auto& [fpr, tpr] : curve.points) points.push_back({fpr, tpr});
        j["roc"][model] = {{"auc", curve.auc}, {"points", std::move(points)}};
    }
    j["timings_seconds"] = report.timings_seconds;
    j["notes"] = report.notes;
    return j.dump(2) + "\n";
}

RunReport load_report_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open report '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError("report '" + path + "' is not valid json: " + e.what());
    }
    RunReport report;
    try {
        report.schema_version = j.at("schema_version").get<int>();
        if (report.schema_version != 1) {
            throw IoError("unsupported report schema version " +
                          std::to_string(report.schema_version));
        }
        report.config = j.at("config").get<std::map<std::string, std::string>>();
        report.dataset_provenance = j.at("dataset").at("provenance").get<std::string>();
        report.train_rows = j.at("dataset").at("train_rows").get<std::size_t>();
        report.test_rows = j.at("dataset").at("test_rows").get<std::size_t>();
        report.feature_count = j.at("dataset").at("features").get<std::size_t>();
        for (const auto& row : j.at("metrics")) report.rows.push_back(row_from_json(row));
        for (const auto& entry : j.at("pca_variance")) {
            report.variance_table.emplace_back(entry.at("components").get<int>(),
                                               entry.at("cumulative_pct").get<double>());
        }
        for (const auto& entry : j.at("recall_vs_qubits")) {
            report.recall_vs_qubits.emplace_back(entry.at("qubits").get<int>(),
                                                 entry.at("recall").get<double>());
        }
        for (const auto& [key, h] : j.at("cost_histories").items()) {
            std::vector<std::pair<int, double>> history;
            for (const auto& pair : h) {
                history.emplace_back(pair.at(0).get<int>(), pair.at(1).get<double>());
            }
            report.cost_histories[std::stoi(key)] = std::move(history);
        }
        for (const auto& [model, curve_json] : j.at("roc").items()) {
            metrics::RocCurve curve;
            curve.auc = curve_json.at("auc").get<double>();
            for (const auto& p : curve_json.at("points")) {
                curve.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
            }
            report.roc_curves[model] = std::move(curve);
        }
        report.timings_seconds = j.at("timings_seconds").get<std::map<std::string, double>>();
        report.notes = j.at("notes").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw IoError("report '" + path + "' has an unexpected shape: " + e.what());
    }
    return report;
}

void emit_report(const RunReport& report, const std::string& out_dir) {
    if (report.rows.empty()) {
        throw ConfigError("refusing to emit an empty report");
    }

    // Render everything first so an unusable directory fails cleanly.
    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("report.json", report_to_json(report));
    files.emplace_back("metrics.csv", metrics_csv(report));
    files.emplace_back("pca_variance.csv", variance_csv(report));
    files.emplace_back("recall_vs_qubits.csv", recall_csv(report));
    for (const auto& [model, curve] : report.roc_curves) {
        files.emplace_back("roc_" + model + ".csv", roc_csv(curve));
    }
    for (const auto& [n, history] : report.cost_histories) {
        files.emplace_back("cost_history_" + std::to_string(n) + "q.csv",
                           cost_history_csv(history));
    }

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
    }
    {
        const auto probe = fs::path(out_dir) / ".write_probe";
        std::ofstream p(probe, std::ios::binary);
        p << "ok";
        const bool writable = static_cast<bool>(p);
        p.close();
        fs::remove(probe, ec);
        if (!writable) {
            throw IoError("output directory '" + out_dir + "' is not writable");
        }
    }
    for (const auto& [name, content] : files) {
        const auto path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::binary);
        out << content;
        if (!out) {
            throw IoError("failed writing '" + path.string() + "'");
        }
    }
}

}  // namespace hqc::harness
