#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hqc/harness.hpp"
#include "hqc/prng.hpp"

namespace hqc::harness {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

bool parse_double(const std::string& cell, double& out) {
    if (cell.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(cell.c_str(), &end);
    return errno == 0 && end == cell.c_str() + cell.size() && std::isfinite(out);
}

void note(IngestStats* stats, const std::string& msg) {
    if (!stats) return;
    ++stats->rejected_rows;
    if (stats->diagnostics.size() < 5) stats->diagnostics.push_back(msg);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& split_tag, IngestStats* stats) {
    std::ifstream in(path);
    if (!in) {
        throw IngestError("cannot open '" + path + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw IngestError("'" + path + "' is empty");
    }
    // Strip a UTF-8 BOM if present.
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = split_cells(line);
    std::size_t label_idx = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == label_column) {
            label_idx = i;
            break;
        }
    }
    if (label_idx == header.size()) {
        throw IngestError("'" + path + "' has no column named '" + label_column + "'");
    }

    Dataset ds;
    ds.split_tag = split_tag;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i != label_idx) ds.feature_names.push_back(header[i]);
    }
    const std::size_t width = ds.feature_names.size();
    if (width == 0) {
        throw IngestError("'" + path + "' has no feature columns");
    }

    std::vector<double> values;
    std::size_t line_no = 1;
    std::vector<double> row(width);
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_cells(line);
        if (cells.size() != header.size()) {
            note(stats, path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(cells.size()));
            continue;
        }
        bool ok = true;
        std::size_t fi = 0;
        int label = -1;
        for (std::size_t i = 0; i < cells.size() && ok; ++i) {
            double v;
            if (!parse_double(cells[i], v)) {
                note(stats, path + ":" + std::to_string(line_no) + ": unparseable cell '" +
                                cells[i] + "'");
                ok = false;
                break;
            }
            if (i == label_idx) {
                if (v == 0.0) {
                    label = 0;
                } else if (v == 1.0) {
                    label = 1;
                } else {
                    note(stats, path + ":" + std::to_string(line_no) + ": label must be 0 or 1");
                    ok = false;
                }
            } else {
                row[fi++] = v;
            }
        }
        if (!ok) continue;
        values.insert(values.end(), row.begin(), row.end());
        ds.y.push_back(label);
    }
    if (ds.y.empty()) {
        throw IngestError("'" + path + "' contains no valid data rows");
    }
    ds.X.rows = ds.y.size();
    ds.X.cols = width;
    ds.X.data = std::move(values);
    return ds;
}

std::pair<Dataset, Dataset> ingest_csv(const std::string& train_path,
                                       const std::string& test_path,
                                       const std::string& label_column, IngestStats* stats) {
    Dataset train = load_csv(train_path, label_column, "train", stats);
    Dataset test = load_csv(test_path, label_column, "test", stats);

    if (train.feature_names != test.feature_names) {
        for (const auto& name : train.feature_names) {
            if (std::find(test.feature_names.begin(), test.feature_names.end(), name) ==
                test.feature_names.end()) {
                throw IngestError("test set is missing column '" + name + "'");
            }
        }
        for (const auto& name : test.feature_names) {
            if (std::find(train.feature_names.begin(), train.feature_names.end(), name) ==
                train.feature_names.end()) {
                throw IngestError("test set has extra column '" + name + "'");
            }
        }
        // Same columns, different order: reorder test to match train.
        Matrix reordered(test.X.rows, test.X.cols);
        for (std::size_t c = 0; c < train.feature_names.size(); ++c) {
            const auto it = std::find(test.feature_names.begin(), test.feature_names.end(),
                                      train.feature_names[c]);
            const auto src = static_cast<std::size_t>(it - test.feature_names.begin());
            for (std::size_t r = 0; r < test.X.rows; ++r) {
                reordered.at(r, c) = test.X.at(r, src);
            }
        }
        test.X = std::move(reordered);
        test.feature_names = train.feature_names;
    }
    return {std::move(train), std::move(test)};
}

std::pair<Dataset, Dataset> synth_dataset(int n_samples, int n_features,
                                          double class_separation, std::uint64_t seed) {
    if (n_features < 2) {
        throw ConfigError("synthetic dataset needs at least 2 features");
    }
    if (class_separation < 0.0) {
        throw ConfigError("class separation must be non-negative");
    }
    if (n_samples < 5) {
        throw ConfigError("synthetic dataset needs at least 5 samples");
    }

    Xorshift64Star rng(seed);
    const std::size_t n = static_cast<std::size_t>(n_samples);
    const std::size_t d = static_cast<std::size_t>(n_features);
    const std::size_t n_class0 = n / 2;

    // Class means sit at -s/2 and +s/2 on the first feature axis.
    Matrix X(n, d);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = i < n_class0 ? 0 : 1;
        const double offset = (y[i] == 0 ? -0.5 : 0.5) * class_separation;
        for (std::size_t c = 0; c < d; ++c) {
            X.at(i, c) = rng.normal() + (c == 0 ? offset : 0.0);
        }
    }

    // Seeded Fisher-Yates shuffle, then an 80/20 split.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.next_unit() * static_cast<double>(i + 1));
        std::swap(order[i], order[std::min(j, i)]);
    }
    const std::size_t train_n = n * 4 / 5;

    std::vector<std::string> names(d);
    for (std::size_t c = 0; c < d; ++c) names[c] = "f" + std::to_string(c);

    Dataset train, test;
    train.split_tag = "train";
    test.split_tag = "test";
    train.feature_names = names;
    test.feature_names = names;
    train.X = Matrix(train_n, d);
    test.X = Matrix(n - train_n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = order[i];
        Dataset& target = i < train_n ? train : test;
        const std::size_t dst = i < train_n ? i : i - train_n;
        for (std::size_t c = 0; c < d; ++c) target.X.at(dst, c) = X.at(src, c);
        target.y.push_back(y[src]);
    }
    return {std::move(train), std::move(test)};
}

void write_dataset_csv(const Dataset& ds, const std::string& path,
                       const std::string& label_column) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write '" + path + "'");
    }
    for (const auto& name : ds.feature_names) out << name << ',';
    out << label_column << '\n';
    out.precision(17);
    for (std::size_t r = 0; r < ds.X.rows; ++r) {
        for (std::size_t c = 0; c < ds.X.cols; ++c) out << ds.X.at(r, c) << ',';
        out << ds.y[r] << '\n';
    }
    if (!out) {
        throw IoError("write to '" + path + "' failed");
    }
}

}  // namespace hqc::harness
