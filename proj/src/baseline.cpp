#include "hqc/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hqc::baseline {

namespace {

constexpr double kProbFloor = 1e-300;
constexpr double kProbCeil = 1.0 - 1e-16;

double raw_margin(const LogisticModel& model, std::span<const double> x) {
    double z = model.bias;
    for (std::size_t i = 0; i < x.size(); ++i) z += model.weights[i] * x[i];
    return z;
}

double stable_sigmoid(double z) {
    double p;
    if (z >= 0.0) {
        p = 1.0 / (1.0 + std::exp(-z));
    } else {
        const double e = std::exp(z);
        p = e / (1.0 + e);
    }
    return std::clamp(p, kProbFloor, kProbCeil);
}

void check_labels(std::span<const int> y) {
    bool has0 = false, has1 = false;
    for (int label : y) {
        if (label == 0) {
            has0 = true;
        } else if (label == 1) {
            has1 = true;
        } else {
            throw ConfigError("labels must be 0 or 1, got " + std::to_string(label));
        }
    }
    if (!has0 || !has1) {
        throw ConfigError("training data must contain both classes");
    }
}

}  // namespace

double predict_proba(const LogisticModel& model, std::span<const double> x) {
    if (x.size() != model.weights.size()) {
        throw ConfigError("model has " + std::to_string(model.weights.size()) +
                          " weights, got " + std::to_string(x.size()) + " features");
    }
    return stable_sigmoid(raw_margin(model, x));
}

std::vector<double> predict_proba(const LogisticModel& model, const Matrix& X) {
    std::vector<double> probs(X.rows);
    for (std::size_t r = 0; r < X.rows; ++r) probs[r] = predict_proba(model, X.row(r));
    return probs;
}

double loss(const LogisticModel& model, const Matrix& X, std::span<const int> y) {
    const double n = static_cast<double>(X.rows);
    double acc = 0.0;
    for (std::size_t r = 0; r < X.rows; ++r) {
        const double z = raw_margin(model, X.row(r));
        // log(1 + e^z) - y z, written to avoid overflow in either tail
        acc += std::max(z, 0.0) - z * static_cast<double>(y[r]) + std::log1p(std::exp(-std::abs(z)));
    }
    double reg = 0.0;
    for (double w : model.weights) reg += w * w;
    return acc / n + 0.5 * model.l2_strength / n * reg;
}

std::vector<double> loss_gradient(const LogisticModel& model, const Matrix& X,
                                  std::span<const int> y) {
    const std::size_t d = model.weights.size();
    const double n = static_cast<double>(X.rows);
    std::vector<double> grad(d + 1, 0.0);
    for (std::size_t r = 0; r < X.rows; ++r) {
        const double residual = stable_sigmoid(raw_margin(model, X.row(r))) -
                                static_cast<double>(y[r]);
        const auto row = X.row(r);
        for (std::size_t c = 0; c < d; ++c) grad[c] += residual * row[c];
        grad[d] += residual;
    }
    for (std::size_t c = 0; c < d; ++c) {
        grad[c] = grad[c] / n + model.l2_strength / n * model.weights[c];
    }
    grad[d] /= n;
    return grad;
}

LogisticModel fit_logistic(const Matrix& X, std::span<const int> y,
                           const LogisticFitConfig& config) {
    if (X.rows == 0 || X.cols == 0) {
        throw ConfigError("logistic training needs a non-empty matrix");
    }
    if (X.rows != y.size()) {
        throw ConfigError("row/label count mismatch");
    }
    check_labels(y);
    if (config.max_epochs < 1 || !(config.learning_rate > 0.0) || config.l2_strength < 0.0) {
        throw ConfigError("invalid logistic fit configuration");
    }

    LogisticModel model;
    model.weights.assign(X.cols, 0.0);
    model.l2_strength = config.l2_strength;

    double lr = config.learning_rate;
    double current = loss(model, X, y);
    for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
        const auto grad = loss_gradient(model, X, y);
        double grad_inf = 0.0;
        for (double gi : grad) grad_inf = std::max(grad_inf, std::abs(gi));
        if (grad_inf < 1e-10) break;

        // Halve the step until the loss stops increasing.
        LogisticModel trial = model;
        double trial_loss;
        while (true) {
            for (std::size_t c = 0; c < model.weights.size(); ++c) {
                trial.weights[c] = model.weights[c] - lr * grad[c];
            }
            trial.bias = model.bias - lr * grad.back();
            trial_loss = loss(trial, X, y);
            if (trial_loss <= current || lr < 1e-15) break;
            lr *= 0.5;
        }
        if (trial_loss > current) break;  // step underflow, nothing left to gain
        model.weights = trial.weights;
        model.bias = trial.bias;
        current = trial_loss;
    }
    return model;
}

}  // namespace hqc::baseline
