#include "hqc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hqc::metrics {

namespace {

void check_binary(std::span<const int> labels, const char* what) {
    for (int v : labels) {
        if (v != 0 && v != 1) {
            throw ConfigError(std::string(what) + " must be 0 or 1, got " + std::to_string(v));
        }
    }
}

}  // namespace

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred) {
    if (y_true.size() != y_pred.size()) {
        throw ConfigError("label vectors differ in length: " + std::to_string(y_true.size()) +
                          " vs " + std::to_string(y_pred.size()));
    }
    check_binary(y_true, "true labels");
    check_binary(y_pred, "predicted labels");
    ConfusionCounts counts;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] == 1) {
            (y_pred[i] == 1 ? counts.tp : counts.fn)++;
        } else {
            (y_pred[i] == 1 ? counts.fp : counts.tn)++;
        }
    }
    return counts;
}

Summary summary(const ConfusionCounts& counts) {
    const double total = static_cast<double>(counts.total());
    if (counts.total() <= 0) {
        throw ConfigError("confusion counts are empty");
    }
    Summary s;
    s.accuracy = static_cast<double>(counts.tp + counts.tn) / total;
    if (counts.tp + counts.fp > 0) {
        s.precision = static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fp);
    } else {
        s.precision = 0.0;
        s.precision_defined = false;
    }
    s.recall = (counts.tp + counts.fn > 0)
                   ? static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn)
                   : 0.0;
    s.f1 = (s.precision + s.recall > 0.0)
               ? 2.0 * s.precision * s.recall / (s.precision + s.recall)
               : 0.0;
    return s;
}

RocCurve roc_auc(std::span<const int> y_true, std::span<const double> scores,
                 PositiveDirection direction) {
    if (y_true.size() != scores.size()) {
        throw ConfigError("labels and scores differ in length");
    }
    check_binary(y_true, "true labels");
    std::int64_t positives = 0;
    for (int v : y_true) positives += v;
    const std::int64_t negatives = static_cast<std::int64_t>(y_true.size()) - positives;
    if (positives == 0 || negatives == 0) {
        throw ConfigError("roc needs both classes present");
    }
    for (double s : scores) {
        if (!std::isfinite(s)) throw ConfigError("roc scores must be finite");
    }

    // Order so that the most positive-looking score comes first.
    std::vector<std::size_t> order(y_true.size());
    std::iota(order.begin(), order.end(), 0);
    const double sign = direction == PositiveDirection::Higher ? 1.0 : -1.0;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return sign * scores[a] > sign * scores[b];
    });

    RocCurve curve;
    curve.points.reserve(y_true.size() + 1);
    curve.points.emplace_back(0.0, 0.0);

    double auc = 0.0;
    std::int64_t tp = 0, fp = 0;
    double prev_fpr = 0.0, prev_tpr = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        // Every sample sharing this score moves in one threshold step.
        const double key = sign * scores[order[i]];
        while (i < order.size() && sign * scores[order[i]] == key) {
            if (y_true[order[i]] == 1) ++tp; else ++fp;
            ++i;
        }
        const double tpr = static_cast<double>(tp) / static_cast<double>(positives);
        const double fpr = static_cast<double>(fp) / static_cast<double>(negatives);
        auc += (fpr - prev_fpr) * (tpr + prev_tpr) * 0.5;
        curve.points.emplace_back(fpr, tpr);
        prev_fpr = fpr;
        prev_tpr = tpr;
    }
    curve.auc = auc;
    return curve;
}

}  // namespace hqc::metrics
