#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hqc/circuits.hpp"
#include "hqc/common.hpp"
#include "hqc/optim.hpp"
#include "hqc/qsim.hpp"

namespace hqc::vqc {

// Variational classifier: data-encoding circuit, trainable circuit, trained
// parameters, and a single-qubit Z readout. Class 0 maps to target +1,
// class 1 (ransomware) to target -1.
struct VqcModel {
    circuits::FeatureMapSpec feature_map;
    circuits::AnsatzSpec ansatz;
    std::vector<double> theta;  // empty while the model acts as an untrained shape
    qsim::Observable observable{};
};

struct TrainLog {
    std::vector<std::pair<int, double>> cost_history;  // (evaluation index, cost)
    std::vector<double> eval_seconds;                  // wall time per evaluation
    std::vector<double> final_theta;
    bool converged = false;  // true when the trust region shrank to its floor
};

struct TrainOutcome {
    VqcModel model;
    TrainLog log;
};

inline double target_for_label(int label) { return label == 0 ? 1.0 : -1.0; }

// Pseudo-probability of the positive (ransomware) class for a score in [-1, 1].
inline double pseudo_probability(double score) { return 0.5 * (1.0 - score); }

// Ties at exactly 0 go to class 0 (benign), away from false positives.
inline int predict_from_score(double score) { return score >= 0.0 ? 0 : 1; }

// <Z_q> of ansatz(theta) applied after feature_map(x) on |0...0>.
double decision_score(const VqcModel& model, std::span<const double> x);

int predict(const VqcModel& model, std::span<const double> x);

// Per-sample scores for the whole matrix; rows evaluated in parallel.
std::vector<double> decision_scores(const VqcModel& shape, std::span<const double> theta,
                                    const Matrix& X);

// Mean squared error of scores against +/-1 targets.
double cost(const VqcModel& shape, std::span<const double> theta, const Matrix& X,
            std::span<const int> y);

// Derivative-free training: theta starts at seeded uniform[-pi, pi] and the
// trust-region optimizer minimizes cost(theta). Deterministic given the seed.
TrainOutcome train(const VqcModel& shape, const Matrix& X, std::span<const int> y,
                   const optim::OptimizerConfig& config, std::uint64_t seed);

// Central differences of cost(theta), one component per parameter.
std::vector<double> finite_difference_gradient(const VqcModel& shape,
                                               std::span<const double> theta, const Matrix& X,
                                               std::span<const int> y, double epsilon);

// Exact gradient: every parameter enters as an RY angle, so each score
// derivative is (f(theta_j + pi/2) - f(theta_j - pi/2)) / 2, chained through
// the squared-error cost.
std::vector<double> parameter_shift_gradient(const VqcModel& shape, std::span<const double> theta,
                                             const Matrix& X, std::span<const int> y);

}  // namespace hqc::vqc
