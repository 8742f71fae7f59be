#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hqc/common.hpp"

namespace hqc::baseline {

struct LogisticModel {
    std::vector<double> weights;
    double bias = 0.0;
    double l2_strength = 0.0;
};

struct LogisticFitConfig {
    double l2_strength = 1.0;  // scaled by 1/N inside the loss
    int max_epochs = 500;
    double learning_rate = 0.1;
    std::uint64_t seed = 42;  // reserved for optional shuffling; training is full-batch
};

// Numerically stable sigmoid of w.x + b, clamped strictly inside (0, 1).
double predict_proba(const LogisticModel& model, std::span<const double> x);
std::vector<double> predict_proba(const LogisticModel& model, const Matrix& X);

// Mean cross-entropy plus 0.5 * l2/N * |w|^2; exposed for tests.
double loss(const LogisticModel& model, const Matrix& X, std::span<const int> y);

// Analytic gradient of `loss` with respect to (weights..., bias); the bias
// derivative is the last entry.
std::vector<double> loss_gradient(const LogisticModel& model, const Matrix& X,
                                  std::span<const int> y);

// Full-batch gradient descent from zero weights with step halving whenever a
// step would increase the loss. Deterministic.
LogisticModel fit_logistic(const Matrix& X, std::span<const int> y,
                           const LogisticFitConfig& config = {});

}  // namespace hqc::baseline
