#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hqc/common.hpp"

namespace hqc::metrics {

// Positive class is ransomware (label 1).
struct ConfusionCounts {
    std::int64_t tp = 0;
    std::int64_t fp = 0;
    std::int64_t tn = 0;
    std::int64_t fn = 0;

    std::int64_t total() const { return tp + fp + tn + fn; }
};

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred);

// precision_defined is false when no positive predictions exist; the value
// is then reported as 0 so metric sweeps never abort.
struct Summary {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool precision_defined = true;
};

Summary summary(const ConfusionCounts& counts);

// Whether larger or smaller scores indicate the positive class.
enum class PositiveDirection { Higher, Lower };

// Threshold-ordered sweep from (0,0) to (1,1); tied scores collapse into a
// single step, so the trapezoidal AUC equals the tie-corrected rank statistic.
struct RocCurve {
    std::vector<std::pair<double, double>> points;  // (false positive rate, true positive rate)
    double auc = 0.0;
};

RocCurve roc_auc(std::span<const int> y_true, std::span<const double> scores,
                 PositiveDirection direction);

}  // namespace hqc::metrics
