#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hqc/qsim.hpp"

namespace hqc::circuits {

// Pair-phase convention for the data-encoding map. Paper uses
// phi_jk = (x_j - x_k)^2; Standard uses the common alternative
// phi_jk = (pi - x_j)(pi - x_k). Single-qubit phases are x_j in both.
enum class PhaseConvention { Paper, Standard };

std::string to_string(PhaseConvention c);
PhaseConvention phase_convention_from_string(const std::string& s);

// Second-order Pauli data-encoding circuit. Each repetition applies a
// Hadamard layer, RZ(2 * phi_j) per qubit, then one ZZ phase per pair.
// An empty entanglement list means every pair j < k.
struct FeatureMapSpec {
    int n_qubits = 0;
    int reps = 2;
    PhaseConvention phase_convention = PhaseConvention::Paper;
    std::vector<std::pair<int, int>> entanglement;
};

// Trainable circuit: RY layer + linear CNOT chain, repeated `reps` times,
// closing with a final RY layer. Parameter count is n_qubits * (reps + 1).
struct AnsatzSpec {
    int n_qubits = 0;
    int reps = 3;
};

int parameter_count(const AnsatzSpec& spec);

std::vector<qsim::Gate> build_feature_map(const FeatureMapSpec& spec, std::span<const double> x);
std::vector<qsim::Gate> build_ansatz(const AnsatzSpec& spec, std::span<const double> theta);

// Key-value description used in run-report configuration blocks.
std::vector<std::pair<std::string, std::string>> describe(const FeatureMapSpec& spec);
std::vector<std::pair<std::string, std::string>> describe(const AnsatzSpec& spec);

}  // namespace hqc::circuits
