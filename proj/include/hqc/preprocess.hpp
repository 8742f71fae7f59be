#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hqc/common.hpp"

namespace hqc::preprocess {

// Per-feature standardization statistics, population (divide-by-N) convention.
struct ScalerModel {
    std::vector<double> means;
    std::vector<double> stds;
    std::vector<std::uint8_t> zero_variance;  // flagged features transform to 0
};

ScalerModel fit_scaler(const Matrix& X);
Matrix transform_scaler(const ScalerModel& model, const Matrix& X);

// Principal components of the training covariance. Columns of `components`
// are orthonormal; eigenvalues are stored descending. The sign of each
// component is fixed so its largest-magnitude entry is positive.
struct PcaModel {
    std::vector<double> mean;  // training column means, length D
    Matrix components;         // D x n
    std::vector<double> explained_variance;
    std::vector<double> explained_variance_ratio;
};

// Centers internally on the training mean. Uses the D x D covariance when
// D <= N, otherwise the N x N Gram matrix; both routes produce the same
// components.
PcaModel fit_pca(const Matrix& X, int n_components);

Matrix transform_pca(const PcaModel& model, const Matrix& X);

// (component count, cumulative explained variance in percent).
std::vector<std::pair<int, double>> cumulative_variance_report(const PcaModel& model);

// Per-feature min-max map onto [-angle, +angle], fitted on training data.
// Keeps encoded rotation angles bounded; values outside the training range
// clip to the interval ends.
struct RangeModel {
    std::vector<double> lo;
    std::vector<double> hi;
    double angle = 0.0;
};

RangeModel fit_range(const Matrix& X, double angle);
Matrix transform_range(const RangeModel& model, const Matrix& X);

}  // namespace hqc::preprocess
