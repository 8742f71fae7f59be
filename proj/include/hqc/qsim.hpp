#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace hqc::qsim {

using amp_t = std::complex<double>;

// Hard cap: 2^20 amplitudes (16 MiB per state).
inline constexpr int kMaxQubits = 20;

// Dense statevector over 2^n_qubits basis states, little-endian: qubit 0 is
// the least significant bit of the basis-state index.
struct StateVector {
    int n_qubits = 0;
    std::vector<amp_t> amps;

    std::uint64_t dim() const { return amps.size(); }
};

enum class GateKind { H, RY, RZ, CNOT, ZZPhase };

// q0 is the acted-on qubit for H/RY/RZ, the control for CNOT, and the first
// qubit of a ZZPhase pair; q1 is the CNOT target or the second pair qubit.
//
// Matrix conventions:
//   RY(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
//   RZ(t) = diag(e^{-it/2}, e^{it/2})
//   ZZPhase(p) = exp(-ip Z*Z): diagonal phase -p where the pair bits agree,
//   +p where they differ.
struct Gate {
    GateKind kind = GateKind::H;
    int q0 = 0;
    int q1 = -1;
    double angle = 0.0;

    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate ry(int q, double theta) { return {GateKind::RY, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }
    static Gate zz_phase(int a, int b, double phi) { return {GateKind::ZZPhase, a, b, phi}; }
};

// Pauli-Z on one qubit, identity on the rest.
struct Observable {
    int qubit = 0;
};

// Execution policy for the kernels. Auto runs the OpenMP path for large
// states unless we are already inside a parallel region (the cost function
// fans out over samples, and each of those simulations must stay serial).
enum class Exec { Auto, Serial, Parallel };

StateVector zero_state(int n_qubits);

void apply_gate(StateVector& state, const Gate& gate, Exec exec = Exec::Auto);
void apply_circuit(StateVector& state, std::span<const Gate> gates, Exec exec = Exec::Auto);

// <psi| Z_qubit |psi> = sum over basis states of +/- |amplitude|^2.
double expectation_z(const StateVector& state, int qubit, Exec exec = Exec::Auto);

// Shot-based estimator of the same expectation: `shots` seeded Born-rule
// draws, returns (count_plus - count_minus) / shots.
double sample_z(const StateVector& state, int qubit, std::uint64_t shots, std::uint64_t seed);

double norm_squared(const StateVector& state);

namespace kernels {

// Serial kernels are the reference implementation; the parallel ones must
// produce bit-identical states (writes are disjoint, no reductions).
void apply_gate_serial(amp_t* amps, std::uint64_t dim, const Gate& gate);
void apply_gate_parallel(amp_t* amps, std::uint64_t dim, const Gate& gate);

double expectation_z_serial(const amp_t* amps, std::uint64_t dim, int qubit);
// Deterministic for a fixed thread count: per-thread partials over static
// chunks, combined in thread order.
double expectation_z_parallel(const amp_t* amps, std::uint64_t dim, int qubit);

}  // namespace kernels

}  // namespace hqc::qsim
