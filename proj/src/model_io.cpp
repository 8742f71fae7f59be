#include "hqc/model_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "hqc/common.hpp"

namespace hqc {

namespace {

constexpr const char* kHeader = "hqc-model v1";

std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, r.ptr};
}

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::binary), path_(path) {
        if (!out_) throw IoError("cannot write '" + path + "'");
        out_ << kHeader << '\n';
    }

    void kind(const std::string& k) { out_ << "kind " << k << '\n'; }

    void vec(const std::string& name, const std::vector<double>& v) {
        out_ << "vector " << name << ' ' << v.size() << '\n';
        for (std::size_t i = 0; i < v.size(); ++i) {
            out_ << fmt(v[i]) << (i + 1 == v.size() ? '\n' : ' ');
        }
        if (v.empty()) out_ << '\n';
    }

    void vec(const std::string& name, const std::vector<std::uint8_t>& v) {
        std::vector<double> d(v.begin(), v.end());
        vec(name, d);
    }

    void scalar(const std::string& name, double v) {
        out_ << "scalar " << name << ' ' << fmt(v) << '\n';
    }

    void mat(const std::string& name, const Matrix& m) {
        out_ << "matrix " << name << ' ' << m.rows << ' ' << m.cols << '\n';
        for (std::size_t r = 0; r < m.rows; ++r) {
            for (std::size_t c = 0; c < m.cols; ++c) {
                out_ << fmt(m.at(r, c)) << (c + 1 == m.cols ? '\n' : ' ');
            }
        }
    }

    void finish() {
        if (!out_) throw IoError("write to '" + path_ + "' failed");
    }

private:
    std::ofstream out_;
    std::string path_;
};

class Reader {
public:
    explicit Reader(const std::string& path) : in_(path), path_(path) {
        if (!in_) throw IoError("cannot open '" + path + "'");
        std::string header;
        std::getline(in_, header);
        if (!header.empty() && header.back() == '\r') header.pop_back();
        if (header != kHeader) {
            throw IoError("'" + path + "' is not a " + std::string(kHeader) + " file");
        }
    }

    std::string kind() {
        auto [tag, rest] = next_line();
        if (tag != "kind") throw IoError(path_ + ": expected a kind line");
        return rest;
    }

    std::vector<double> vec(const std::string& name) {
        auto [tag, rest] = next_line();
        std::stringstream hs(rest);
        std::string got;
        std::size_t len = 0;
        hs >> got >> len;
        if (tag != "vector" || got != name || !hs) {
            throw IoError(path_ + ": expected vector '" + name + "'");
        }
        std::vector<double> v(len);
        for (double& x : v) {
            if (!(in_ >> x)) throw IoError(path_ + ": truncated vector '" + name + "'");
        }
        skip_eol();
        return v;
    }

    double scalar(const std::string& name) {
        auto [tag, rest] = next_line();
        std::stringstream hs(rest);
        std::string got;
        double v = 0.0;
        hs >> got >> v;
        if (tag != "scalar" || got != name || hs.fail()) {
            throw IoError(path_ + ": expected scalar '" + name + "'");
        }
        return v;
    }

    Matrix mat(const std::string& name) {
        auto [tag, rest] = next_line();
        std::stringstream hs(rest);
        std::string got;
        std::size_t rows = 0, cols = 0;
        hs >> got >> rows >> cols;
        if (tag != "matrix" || got != name || !hs) {
            throw IoError(path_ + ": expected matrix '" + name + "'");
        }
        Matrix m(rows, cols);
        for (double& x : m.data) {
            if (!(in_ >> x)) throw IoError(path_ + ": truncated matrix '" + name + "'");
        }
        skip_eol();
        return m;
    }

private:
    std::pair<std::string, std::string> next_line() {
        std::string line;
        if (!std::getline(in_, line)) throw IoError(path_ + ": unexpected end of file");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto space = line.find(' ');
        if (space == std::string::npos) return {line, ""};
        return {line.substr(0, space), line.substr(space + 1)};
    }

    void skip_eol() {
        std::string rest;
        std::getline(in_, rest);
    }

    std::ifstream in_;
    std::string path_;
};

}  // namespace

void save_scaler(const preprocess::ScalerModel& model, const std::string& path) {
    Writer w(path);
    w.kind("scaler");
    w.vec("means", model.means);
    w.vec("stds", model.stds);
    w.vec("zero_variance", model.zero_variance);
    w.finish();
}

preprocess::ScalerModel load_scaler(const std::string& path) {
    Reader r(path);
    if (r.kind() != "scaler") throw IoError("'" + path + "' is not a scaler model");
    preprocess::ScalerModel model;
    model.means = r.vec("means");
    model.stds = r.vec("stds");
    const auto flags = r.vec("zero_variance");
    model.zero_variance.assign(flags.size(), 0);
    for (std::size_t i = 0; i < flags.size(); ++i) {
        model.zero_variance[i] = flags[i] != 0.0 ? 1 : 0;
    }
    return model;
}

void save_pca(const preprocess::PcaModel& model, const std::string& path) {
    Writer w(path);
    w.kind("pca");
    w.vec("mean", model.mean);
    w.mat("components", model.components);
    w.vec("explained_variance", model.explained_variance);
    w.vec("explained_variance_ratio", model.explained_variance_ratio);
    w.finish();
}

preprocess::PcaModel load_pca(const std::string& path) {
    Reader r(path);
    if (r.kind() != "pca") throw IoError("'" + path + "' is not a pca model");
    preprocess::PcaModel model;
    model.mean = r.vec("mean");
    model.components = r.mat("components");
    model.explained_variance = r.vec("explained_variance");
    model.explained_variance_ratio = r.vec("explained_variance_ratio");
    return model;
}

void save_logistic(const baseline::LogisticModel& model, const std::string& path) {
    Writer w(path);
    w.kind("logistic");
    w.vec("weights", model.weights);
    w.scalar("bias", model.bias);
    w.scalar("l2_strength", model.l2_strength);
    w.finish();
}

baseline::LogisticModel load_logistic(const std::string& path) {
    Reader r(path);
    if (r.kind() != "logistic") throw IoError("'" + path + "' is not a logistic model");
    baseline::LogisticModel model;
    model.weights = r.vec("weights");
    model.bias = r.scalar("bias");
    model.l2_strength = r.scalar("l2_strength");
    return model;
}

}  // namespace hqc
