#include <charconv>
#include <fstream>
#include <sstream>

#include "hqc/harness.hpp"

namespace hqc::harness {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool parse_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "' expects true/false, got '" + v + "'");
}

long long parse_int(const std::string& v, const std::string& key) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "' expects an integer, got '" + v + "'");
    }
    return out;
}

double parse_real(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' expects a number, got '" + v + "'");
    }
}

std::vector<int> parse_int_list(const std::string& v, const std::string& key) {
    std::vector<int> values;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        values.push_back(static_cast<int>(parse_int(trim(item), key)));
    }
    if (values.empty()) {
        throw ConfigError("key '" + key + "' expects a comma-separated list");
    }
    return values;
}

}  // namespace

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    RunConfig config;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) +
                              ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_int(value, key));
        } else if (key == "qubit_counts") {
            config.qubit_counts = parse_int_list(value, key);
        } else if (key == "budgets") {
            config.budgets = parse_int_list(value, key);
        } else if (key == "feature_map_reps") {
            config.feature_map_reps = static_cast<int>(parse_int(value, key));
        } else if (key == "ansatz_reps") {
            config.ansatz_reps = static_cast<int>(parse_int(value, key));
        } else if (key == "phase_convention") {
            config.phase_convention = circuits::phase_convention_from_string(value);
        } else if (key == "use_scaler") {
            config.use_scaler = parse_bool(value, key);
        } else if (key == "use_pca") {
            config.use_pca = parse_bool(value, key);
        } else if (key == "shots") {
            config.shots = static_cast<std::uint64_t>(parse_int(value, key));
        } else if (key == "synthetic") {
            config.synthetic = parse_bool(value, key);
        } else if (key == "synth_samples") {
            config.synth_samples = static_cast<int>(parse_int(value, key));
        } else if (key == "synth_features") {
            config.synth_features = static_cast<int>(parse_int(value, key));
        } else if (key == "synth_separation") {
            config.synth_separation = parse_real(value, key);
        } else if (key == "train_csv") {
            config.train_csv = value;
        } else if (key == "test_csv") {
            config.test_csv = value;
        } else if (key == "label_column") {
            config.label_column = value;
        } else if (key == "external_baselines") {
            config.external_baselines = value;
        } else if (key == "out_dir") {
            config.out_dir = value;
        } else if (key == "logistic_l2") {
            config.logistic_l2 = parse_real(value, key);
        } else if (key == "logistic_epochs") {
            config.logistic_epochs = static_cast<int>(parse_int(value, key));
        } else if (key == "logistic_lr") {
            config.logistic_lr = parse_real(value, key);
        } else if (key == "save_models") {
            config.save_models = parse_bool(value, key);
        } else {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }
    return config;
}

void validate(const RunConfig& config) {
    if (config.qubit_counts.empty()) {
        throw ConfigError("qubit_counts must not be empty");
    }
    if (config.qubit_counts.size() != config.budgets.size()) {
        throw ConfigError("budgets list must align with qubit_counts (" +
                          std::to_string(config.budgets.size()) + " vs " +
                          std::to_string(config.qubit_counts.size()) + ")");
    }
    for (int n : config.qubit_counts) {
        if (n < 1 || n > qsim::kMaxQubits) {
            throw ConfigError("qubit count " + std::to_string(n) + " out of range");
        }
    }
    for (int b : config.budgets) {
        if (b < 1) throw ConfigError("evaluation budgets must be at least 1");
    }
    if (config.feature_map_reps < 1 || config.ansatz_reps < 1) {
        throw ConfigError("circuit repetitions must be at least 1");
    }
    if (!config.synthetic && (config.train_csv.empty() || config.test_csv.empty())) {
        throw ConfigError("train_csv and test_csv are required unless synthetic = true");
    }
}

std::map<std::string, std::string> describe(const RunConfig& config) {
    std::map<std::string, std::string> kv;
    kv["seed"] = std::to_string(config.seed);
    std::string qubits, budgets;
    for (std::size_t i = 0; i < config.qubit_counts.size(); ++i) {
        if (i) {
            qubits += ',';
            budgets += ',';
        }
        qubits += std::to_string(config.qubit_counts[i]);
        budgets += std::to_string(config.budgets[i]);
    }
    kv["qubit_counts"] = qubits;
    kv["budgets"] = budgets;
    kv["feature_map_reps"] = std::to_string(config.feature_map_reps);
    kv["ansatz_reps"] = std::to_string(config.ansatz_reps);
    kv["phase_convention"] = circuits::to_string(config.phase_convention);
    kv["use_scaler"] = config.use_scaler ? "true" : "false";
    kv["use_pca"] = config.use_pca ? "true" : "false";
    kv["shots"] = std::to_string(config.shots);
    kv["synthetic"] = config.synthetic ? "true" : "false";
    if (config.synthetic) {
        kv["synth_samples"] = std::to_string(config.synth_samples);
        kv["synth_features"] = std::to_string(config.synth_features);
        std::ostringstream sep;
        sep.precision(17);
        sep << config.synth_separation;
        kv["synth_separation"] = sep.str();
    } else {
        kv["train_csv"] = config.train_csv;
        kv["test_csv"] = config.test_csv;
        kv["label_column"] = config.label_column;
    }
    if (!config.external_baselines.empty()) {
        kv["external_baselines"] = config.external_baselines;
    }
    kv["logistic_l2"] = std::to_string(config.logistic_l2);
    kv["logistic_epochs"] = std::to_string(config.logistic_epochs);
    kv["logistic_lr"] = std::to_string(config.logistic_lr);

    // Circuit provenance entries mirror the specs built per qubit count.
    circuits::FeatureMapSpec fm;
    fm.n_qubits = config.qubit_counts.front();
    fm.reps = config.feature_map_reps;
    fm.phase_convention = config.phase_convention;
    for (const auto& [k, v] : circuits::describe(fm)) {
        if (k != "feature_map.n_qubits") kv[k] = v;
    }
    circuits::AnsatzSpec an;
    an.n_qubits = config.qubit_counts.front();
    an.reps = config.ansatz_reps;
    for (const auto& [k, v] : circuits::describe(an)) {
        if (k != "ansatz.n_qubits" && k != "ansatz.parameter_count") kv[k] = v;
    }
    return kv;
}

}  // namespace hqc::harness
