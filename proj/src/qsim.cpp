#include "hqc/qsim.hpp"

#include <cmath>
#include <string>

#include "hqc/common.hpp"
#include "hqc/prng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hqc::qsim {

namespace {

// Below this size the parallel kernels cost more than they save.
constexpr std::uint64_t kParallelMinDim = std::uint64_t{1} << 12;

bool use_parallel(std::uint64_t dim, Exec exec) {
    if (exec == Exec::Serial) return false;
    if (exec == Exec::Parallel) return true;
#ifdef _OPENMP
    return dim >= kParallelMinDim && omp_in_parallel() == 0;
#else
    (void)dim;
    return false;
#endif
}

void check_qubit(const StateVector& state, int q, const char* what) {
    if (q < 0 || q >= state.n_qubits) {
        throw ConfigError(std::string(what) + " index " + std::to_string(q) +
                          " out of range for " + std::to_string(state.n_qubits) + " qubits");
    }
}

}  // namespace

StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                          "], got " + std::to_string(n_qubits));
    }
    StateVector state;
    state.n_qubits = n_qubits;
    state.amps.assign(std::uint64_t{1} << n_qubits, amp_t{0.0, 0.0});
    state.amps[0] = amp_t{1.0, 0.0};
    return state;
}

void apply_gate(StateVector& state, const Gate& gate, Exec exec) {
    check_qubit(state, gate.q0, "qubit");
    if (gate.kind == GateKind::CNOT || gate.kind == GateKind::ZZPhase) {
        check_qubit(state, gate.q1, "qubit");
        if (gate.q0 == gate.q1) {
            throw ConfigError("two-qubit gate needs distinct qubits, got " +
                              std::to_string(gate.q0) + " twice");
        }
    }
    if (use_parallel(state.dim(), exec)) {
        kernels::apply_gate_parallel(state.amps.data(), state.dim(), gate);
    } else {
        kernels::apply_gate_serial(state.amps.data(), state.dim(), gate);
    }
}

void apply_circuit(StateVector& state, std::span<const Gate> gates, Exec exec) {
    for (const Gate& g : gates) {
        apply_gate(state, g, exec);
    }
}

double expectation_z(const StateVector& state, int qubit, Exec exec) {
    check_qubit(state, qubit, "observable qubit");
    if (use_parallel(state.dim(), exec)) {
        return kernels::expectation_z_parallel(state.amps.data(), state.dim(), qubit);
    }
    return kernels::expectation_z_serial(state.amps.data(), state.dim(), qubit);
}

double sample_z(const StateVector& state, int qubit, std::uint64_t shots, std::uint64_t seed) {
    check_qubit(state, qubit, "observable qubit");
    if (shots == 0) {
        throw ConfigError("shot count must be at least 1");
    }
    // Probability of reading 0 on `qubit`, accumulated in index order.
    double p_zero = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        if (((i >> qubit) & 1) == 0) p_zero += std::norm(state.amps[i]);
    }
    if (p_zero > 1.0) p_zero = 1.0;

    Xorshift64Star rng(seed);
    std::uint64_t plus = 0;
    for (std::uint64_t s = 0; s < shots; ++s) {
        if (rng.next_unit() < p_zero) ++plus;
    }
    const double shots_d = static_cast<double>(shots);
    return (2.0 * static_cast<double>(plus) - shots_d) / shots_d;
}

double norm_squared(const StateVector& state) {
    double acc = 0.0;
    for (const amp_t& a : state.amps) acc += std::norm(a);
    return acc;
}

}  // namespace hqc::qsim
