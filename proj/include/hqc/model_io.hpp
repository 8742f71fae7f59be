#pragma once

#include <string>

#include "hqc/baseline.hpp"
#include "hqc/preprocess.hpp"

namespace hqc {

// Versioned plain-text model format: a "hqc-model v1" header, a kind line,
// then named vector/matrix blocks with lossless decimal values.
void save_scaler(const preprocess::ScalerModel& model, const std::string& path);
preprocess::ScalerModel load_scaler(const std::string& path);

void save_pca(const preprocess::PcaModel& model, const std::string& path);
preprocess::PcaModel load_pca(const std::string& path);

void save_logistic(const baseline::LogisticModel& model, const std::string& path);
baseline::LogisticModel load_logistic(const std::string& path);

}  // namespace hqc
