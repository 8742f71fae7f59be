#pragma once

// Independent reference routes used only by tests. Everything here is built
// from first principles (Kronecker products, explicit eigen-rotations, pair
// counting) so it shares no code path with the implementation it checks.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "hqc/common.hpp"
#include "hqc/qsim.hpp"

namespace oracles {

using cd = std::complex<double>;
using CMatrix = std::vector<std::vector<cd>>;

CMatrix identity(std::size_t dim);
CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix matmul(const CMatrix& a, const CMatrix& b);
std::vector<cd> matvec(const CMatrix& m, const std::vector<cd>& v);

// Full 2^n x 2^n unitary of one gate, assembled with Kronecker products in
// little-endian qubit order.
CMatrix gate_matrix(const hqc::qsim::Gate& gate, int n_qubits);

// Simulates a circuit by dense matrix-vector products from |0...0>.
std::vector<cd> dense_simulate(std::span<const hqc::qsim::Gate> gates, int n_qubits);

// <psi| Z_q |psi> via the dense Z matrix.
double dense_expectation_z(const std::vector<cd>& psi, int n_qubits, int qubit);

// Classic Jacobi rotation eigensolver for symmetric matrices; returns
// (eigenvalues descending, eigenvectors as columns aligned with them).
struct EigenResult {
    std::vector<double> values;
    hqc::Matrix vectors;
};
EigenResult jacobi_eigen_symmetric(const hqc::Matrix& sym, int max_sweeps = 100);

// AUC by brute-force counting of correctly ordered positive/negative pairs,
// ties counted half. `higher_is_positive` mirrors the direction switch.
double pair_count_auc(std::span<const int> y_true, std::span<const double> scores,
                      bool higher_is_positive);

}  // namespace oracles
