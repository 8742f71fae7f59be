#include "hqc/circuits.hpp"

#include <numbers>
#include <string>

#include "hqc/common.hpp"

namespace hqc::circuits {

namespace {

void check_spec(int n_qubits, int reps) {
    if (n_qubits < 1 || n_qubits > qsim::kMaxQubits) {
        throw ConfigError("circuit qubit count must be in [1, " +
                          std::to_string(qsim::kMaxQubits) + "], got " +
                          std::to_string(n_qubits));
    }
    if (reps < 1) {
        throw ConfigError("circuit repetitions must be at least 1, got " +
                          std::to_string(reps));
    }
}

std::vector<std::pair<int, int>> resolve_pairs(const FeatureMapSpec& spec) {
    if (spec.entanglement.empty()) {
        std::vector<std::pair<int, int>> pairs;
        pairs.reserve(static_cast<std::size_t>(spec.n_qubits) * (spec.n_qubits - 1) / 2);
        for (int j = 0; j < spec.n_qubits; ++j) {
            for (int k = j + 1; k < spec.n_qubits; ++k) {
                pairs.emplace_back(j, k);
            }
        }
        return pairs;
    }
    for (const auto& [a, b] : spec.entanglement) {
        if (a < 0 || b < 0 || a >= spec.n_qubits || b >= spec.n_qubits || a >= b) {
            throw ConfigError("entanglement pair (" + std::to_string(a) + ", " +
                              std::to_string(b) + ") invalid for " +
                              std::to_string(spec.n_qubits) + " qubits");
        }
    }
    return spec.entanglement;
}

double pair_phase(PhaseConvention c, double xj, double xk) {
    if (c == PhaseConvention::Paper) {
        const double d = xj - xk;
        return d * d;
    }
    return (std::numbers::pi - xj) * (std::numbers::pi - xk);
}

}  // namespace

std::string to_string(PhaseConvention c) {
    return c == PhaseConvention::Paper ? "paper" : "standard";
}

PhaseConvention phase_convention_from_string(const std::string& s) {
    if (s == "paper") return PhaseConvention::Paper;
    if (s == "standard") return PhaseConvention::Standard;
    throw ConfigError("unknown phase convention '" + s + "' (expected paper or standard)");
}

int parameter_count(const AnsatzSpec& spec) {
    check_spec(spec.n_qubits, spec.reps);
    return spec.n_qubits * (spec.reps + 1);
}

std::vector<qsim::Gate> build_feature_map(const FeatureMapSpec& spec, std::span<const double> x) {
    check_spec(spec.n_qubits, spec.reps);
    if (static_cast<int>(x.size()) != spec.n_qubits) {
        throw ConfigError("feature vector length " + std::to_string(x.size()) +
                          " does not match " + std::to_string(spec.n_qubits) + " qubits");
    }
    const auto pairs = resolve_pairs(spec);

    std::vector<qsim::Gate> gates;
    gates.reserve(static_cast<std::size_t>(spec.reps) * (2 * spec.n_qubits + pairs.size()));
    for (int rep = 0; rep < spec.reps; ++rep) {
        for (int q = 0; q < spec.n_qubits; ++q) {
            gates.push_back(qsim::Gate::h(q));
        }
        // RZ(t) carries phase t/2 per Z eigenvalue, so realizing a phase of
        // x_j takes an RZ angle of 2 x_j.
        for (int q = 0; q < spec.n_qubits; ++q) {
            gates.push_back(qsim::Gate::rz(q, 2.0 * x[q]));
        }
        for (const auto& [j, k] : pairs) {
            gates.push_back(qsim::Gate::zz_phase(j, k, pair_phase(spec.phase_convention, x[j], x[k])));
        }
    }
    return gates;
}

std::vector<qsim::Gate> build_ansatz(const AnsatzSpec& spec, std::span<const double> theta) {
    const int expected = parameter_count(spec);
    if (static_cast<int>(theta.size()) != expected) {
        throw ConfigError("parameter vector length " + std::to_string(theta.size()) +
                          " does not match expected " + std::to_string(expected));
    }
    std::vector<qsim::Gate> gates;
    gates.reserve(static_cast<std::size_t>(expected + spec.reps * (spec.n_qubits - 1)));
    int next = 0;
    for (int rep = 0; rep < spec.reps; ++rep) {
        for (int q = 0; q < spec.n_qubits; ++q) {
            gates.push_back(qsim::Gate::ry(q, theta[next++]));
        }
        for (int q = 0; q + 1 < spec.n_qubits; ++q) {
            gates.push_back(qsim::Gate::cnot(q, q + 1));
        }
    }
    for (int q = 0; q < spec.n_qubits; ++q) {
        gates.push_back(qsim::Gate::ry(q, theta[next++]));
    }
    return gates;
}

std::vector<std::pair<std::string, std::string>> describe(const FeatureMapSpec& spec) {
    return {
        {"feature_map.n_qubits", std::to_string(spec.n_qubits)},
        {"feature_map.reps", std::to_string(spec.reps)},
        {"feature_map.phase_convention", to_string(spec.phase_convention)},
        {"feature_map.entanglement",
         spec.entanglement.empty() ? std::string("all_pairs")
                                   : std::to_string(spec.entanglement.size()) + "_custom_pairs"},
    };
}

std::vector<std::pair<std::string, std::string>> describe(const AnsatzSpec& spec) {
    return {
        {"ansatz.n_qubits", std::to_string(spec.n_qubits)},
        {"ansatz.reps", std::to_string(spec.reps)},
        {"ansatz.entanglement", "linear"},
        {"ansatz.parameter_count", std::to_string(spec.n_qubits * (spec.reps + 1))},
    };
}

}  // namespace hqc::circuits
