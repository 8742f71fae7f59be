#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hqc::optim {

struct OptimizerConfig {
    int max_evaluations = 100;
    double rho_begin = 1.0;   // initial trust-region radius (radian-scaled parameters)
    double rho_end = 1e-4;    // final radius; must be < rho_begin
    std::uint64_t seed = 42;  // consumed by random_init callers, not by the optimizer
};

enum class Termination { BudgetExhausted, RhoConverged };

struct OptimResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    int evaluations_used = 0;
    std::vector<std::pair<int, double>> history;  // (evaluation index, objective value)
    Termination termination = Termination::BudgetExhausted;
};

// Non-finite objective value; carries the offending point and which
// evaluation produced it.
class OptimError : public std::runtime_error {
public:
    OptimError(const std::string& msg, std::vector<double> point, int eval_index)
        : std::runtime_error(msg), point(std::move(point)), eval_index(eval_index) {}
    std::vector<double> point;
    int eval_index = -1;
};

using Objective = std::function<double(std::span<const double>)>;

// Derivative-free trust-region minimizer in the COBYLA family, restricted to
// the unconstrained case: a simplex of d+1 points carries a linear
// interpolation model, steps of length rho follow the model downhill, and
// rho shrinks from rho_begin to rho_end as progress stalls. The objective is
// called at most max_evaluations times.
OptimResult cobyla_minimize(const Objective& objective, std::span<const double> start,
                            const OptimizerConfig& config);

// Seeded uniform draws from the project PRNG (see prng.hpp for the exact
// generator and its reference vectors).
std::vector<double> random_init(int dimension, double low, double high, std::uint64_t seed);

}  // namespace hqc::optim
