#include "hqc/vqc.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

namespace hqc::vqc {

namespace {

void check_shape(const VqcModel& shape) {
    if (shape.feature_map.n_qubits != shape.ansatz.n_qubits) {
        throw ConfigError("feature map spans " + std::to_string(shape.feature_map.n_qubits) +
                          " qubits but ansatz spans " + std::to_string(shape.ansatz.n_qubits));
    }
    if (shape.observable.qubit < 0 || shape.observable.qubit >= shape.feature_map.n_qubits) {
        throw ConfigError("observable qubit " + std::to_string(shape.observable.qubit) +
                          " out of range");
    }
}

void check_data(const VqcModel& shape, const Matrix& X, std::span<const int> y) {
    if (X.rows == 0) {
        throw ConfigError("dataset is empty");
    }
    if (X.rows != y.size()) {
        throw ConfigError("feature matrix has " + std::to_string(X.rows) + " rows but " +
                          std::to_string(y.size()) + " labels");
    }
    if (static_cast<int>(X.cols) != shape.feature_map.n_qubits) {
        throw ConfigError("feature width " + std::to_string(X.cols) + " does not match " +
                          std::to_string(shape.feature_map.n_qubits) + " qubits");
    }
}

double score_from_feature_state(const qsim::StateVector& fm_state,
                                std::span<const qsim::Gate> ansatz_gates, int obs_qubit) {
    qsim::StateVector state = fm_state;
    qsim::apply_circuit(state, ansatz_gates, qsim::Exec::Serial);
    return qsim::expectation_z(state, obs_qubit, qsim::Exec::Serial);
}

// Holds the per-sample feature-map states so repeated cost evaluations over
// the same data only re-run the trainable half of the circuit. Produces the
// same floating-point results as simulating the full circuit each time.
class CachedCost {
public:
    CachedCost(const VqcModel& shape, const Matrix& X, std::span<const int> y)
        : shape_(shape), targets_(y.size()) {
        for (std::size_t i = 0; i < y.size(); ++i) targets_[i] = target_for_label(y[i]);
        states_.resize(X.rows);
        const std::int64_t n = static_cast<std::int64_t>(X.rows);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto r = static_cast<std::size_t>(i);
            auto gates = circuits::build_feature_map(shape_.feature_map, X.row(r));
            auto state = qsim::zero_state(shape_.feature_map.n_qubits);
            qsim::apply_circuit(state, gates, qsim::Exec::Serial);
            states_[r] = std::move(state);
        }
    }

    double operator()(std::span<const double> theta) const {
        const auto ansatz_gates = circuits::build_ansatz(shape_.ansatz, theta);
        const std::int64_t n = static_cast<std::int64_t>(states_.size());
        std::vector<double> scores(states_.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto r = static_cast<std::size_t>(i);
            scores[r] =
                score_from_feature_state(states_[r], ansatz_gates, shape_.observable.qubit);
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            const double diff = scores[i] - targets_[i];
            acc += diff * diff;
        }
        return acc / static_cast<double>(scores.size());
    }

private:
    const VqcModel& shape_;
    std::vector<double> targets_;
    std::vector<qsim::StateVector> states_;
};

}  // namespace

double decision_score(const VqcModel& model, std::span<const double> x) {
    check_shape(model);
    const auto fm_gates = circuits::build_feature_map(model.feature_map, x);
    const auto ansatz_gates = circuits::build_ansatz(model.ansatz, model.theta);
    auto state = qsim::zero_state(model.feature_map.n_qubits);
    qsim::apply_circuit(state, fm_gates);
    qsim::apply_circuit(state, ansatz_gates);
    return qsim::expectation_z(state, model.observable.qubit);
}

int predict(const VqcModel& model, std::span<const double> x) {
    return predict_from_score(decision_score(model, x));
}

std::vector<double> decision_scores(const VqcModel& shape, std::span<const double> theta,
                                    const Matrix& X) {
    check_shape(shape);
    if (static_cast<int>(X.cols) != shape.feature_map.n_qubits) {
        throw ConfigError("feature width " + std::to_string(X.cols) + " does not match " +
                          std::to_string(shape.feature_map.n_qubits) + " qubits");
    }
    const auto ansatz_gates = circuits::build_ansatz(shape.ansatz, theta);
    std::vector<double> scores(X.rows);
    const std::int64_t n = static_cast<std::int64_t>(X.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto r = static_cast<std::size_t>(i);
        const auto fm_gates = circuits::build_feature_map(shape.feature_map, X.row(r));
        auto state = qsim::zero_state(shape.feature_map.n_qubits);
        qsim::apply_circuit(state, fm_gates, qsim::Exec::Serial);
        scores[r] = score_from_feature_state(state, ansatz_gates, shape.observable.qubit);
    }
    return scores;
}

double cost(const VqcModel& shape, std::span<const double> theta, const Matrix& X,
            std::span<const int> y) {
    check_shape(shape);
    check_data(shape, X, y);
    const auto scores = decision_scores(shape, theta, X);
    double acc = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const double diff = scores[i] - target_for_label(y[i]);
        acc += diff * diff;
    }
    return acc / static_cast<double>(scores.size());
}

TrainOutcome train(const VqcModel& shape, const Matrix& X, std::span<const int> y,
                   const optim::OptimizerConfig& config, std::uint64_t seed) {
    check_shape(shape);
    check_data(shape, X, y);

    const int params = circuits::parameter_count(shape.ansatz);
    const auto theta0 = optim::random_init(params, -std::numbers::pi, std::numbers::pi, seed);

    CachedCost cached(shape, X, y);
    TrainLog log;
    const optim::Objective objective = [&](std::span<const double> theta) {
        const auto t0 = std::chrono::steady_clock::now();
        const double value = cached(theta);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        log.eval_seconds.push_back(dt.count());
        return value;
    };

    optim::OptimResult result;
    try {
        result = optim::cobyla_minimize(objective, theta0, config);
    } catch (const optim::OptimError& e) {
        throw TrainError(std::string("training cost became non-finite: ") + e.what(),
                         e.eval_index);
    }

    TrainOutcome outcome;
    outcome.model = shape;
    outcome.model.theta = result.best_point;
    log.cost_history = std::move(result.history);
    log.final_theta = result.best_point;
    log.converged = result.termination == optim::Termination::RhoConverged;
    outcome.log = std::move(log);
    return outcome;
}

std::vector<double> finite_difference_gradient(const VqcModel& shape,
                                               std::span<const double> theta, const Matrix& X,
                                               std::span<const int> y, double epsilon) {
    if (!(epsilon > 0.0)) {
        throw ConfigError("finite-difference epsilon must be positive");
    }
    std::vector<double> work(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    for (std::size_t j = 0; j < work.size(); ++j) {
        const double saved = work[j];
        work[j] = saved + epsilon;
        const double up = cost(shape, work, X, y);
        work[j] = saved - epsilon;
        const double down = cost(shape, work, X, y);
        work[j] = saved;
        grad[j] = (up - down) / (2.0 * epsilon);
    }
    return grad;
}

std::vector<double> parameter_shift_gradient(const VqcModel& shape, std::span<const double> theta,
                                             const Matrix& X, std::span<const int> y) {
    check_shape(shape);
    check_data(shape, X, y);
    const double half_pi = 0.5 * std::numbers::pi;
    const auto base = decision_scores(shape, theta, X);
    const double n = static_cast<double>(X.rows);

    std::vector<double> work(theta.begin(), theta.end());
    std::vector<double> grad(theta.size());
    for (std::size_t j = 0; j < work.size(); ++j) {
        const double saved = work[j];
        work[j] = saved + half_pi;
        const auto plus = decision_scores(shape, work, X);
        work[j] = saved - half_pi;
        const auto minus = decision_scores(shape, work, X);
        work[j] = saved;

        double acc = 0.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            const double dscore = 0.5 * (plus[i] - minus[i]);
            acc += (base[i] - target_for_label(y[i])) * dscore;
        }
        grad[j] = 2.0 * acc / n;
    }
    return grad;
}

}  // namespace hqc::vqc
