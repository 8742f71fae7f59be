#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oracles {

namespace {

using hqc::qsim::Gate;
using hqc::qsim::GateKind;

CMatrix zeros(std::size_t dim) { return CMatrix(dim, std::vector<cd>(dim, cd{0.0, 0.0})); }

// Embeds per-qubit 2x2 operators: factor for qubit n-1 comes first in the
// Kronecker chain because qubit 0 is the least significant index bit.
CMatrix embed(const std::vector<std::pair<int, CMatrix>>& ops, int n_qubits) {
    CMatrix total{{cd{1.0, 0.0}}};
    for (int q = n_qubits - 1; q >= 0; --q) {
        const CMatrix* factor = nullptr;
        for (const auto& [target, m] : ops) {
            if (target == q) factor = &m;
        }
        total = factor ? kron(total, *factor) : kron(total, identity(2));
    }
    return total;
}

CMatrix add(const CMatrix& a, const CMatrix& b) {
    CMatrix out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += b[i][j];
    }
    return out;
}

CMatrix scale(const CMatrix& a, cd factor) {
    CMatrix out = a;
    for (auto& row : out) {
        for (auto& v : row) v *= factor;
    }
    return out;
}

}  // namespace

CMatrix identity(std::size_t dim) {
    CMatrix m = zeros(dim);
    for (std::size_t i = 0; i < dim; ++i) m[i][i] = cd{1.0, 0.0};
    return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    const std::size_t an = a.size(), bn = b.size();
    CMatrix out = zeros(an * bn);
    for (std::size_t i = 0; i < an; ++i) {
        for (std::size_t j = 0; j < an; ++j) {
            for (std::size_t k = 0; k < bn; ++k) {
                for (std::size_t l = 0; l < bn; ++l) {
                    out[i * bn + k][j * bn + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    return out;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    const std::size_t n = a.size();
    CMatrix out = zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cd aik = a[i][k];
            if (aik == cd{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) out[i][j] += aik * b[k][j];
        }
    }
    return out;
}

std::vector<cd> matvec(const CMatrix& m, const std::vector<cd>& v) {
    std::vector<cd> out(m.size(), cd{0.0, 0.0});
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
    }
    return out;
}

CMatrix gate_matrix(const Gate& gate, int n_qubits) {
    const cd I{0.0, 1.0};
    const CMatrix pauli_x{{cd{0, 0}, cd{1, 0}}, {cd{1, 0}, cd{0, 0}}};
    const CMatrix proj0{{cd{1, 0}, cd{0, 0}}, {cd{0, 0}, cd{0, 0}}};
    const CMatrix proj1{{cd{0, 0}, cd{0, 0}}, {cd{0, 0}, cd{1, 0}}};

    switch (gate.kind) {
    case GateKind::H: {
        const double s = 1.0 / std::numbers::sqrt2;
        return embed({{gate.q0, CMatrix{{cd{s, 0}, cd{s, 0}}, {cd{s, 0}, cd{-s, 0}}}}}, n_qubits);
    }
    case GateKind::RY: {
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        return embed({{gate.q0, CMatrix{{cd{c, 0}, cd{-s, 0}}, {cd{s, 0}, cd{c, 0}}}}}, n_qubits);
    }
    case GateKind::RZ: {
        const cd e0 = std::exp(-I * (0.5 * gate.angle));
        const cd e1 = std::exp(I * (0.5 * gate.angle));
        return embed({{gate.q0, CMatrix{{e0, cd{0, 0}}, {cd{0, 0}, e1}}}}, n_qubits);
    }
    case GateKind::CNOT: {
        // P0 on the control + P1 on the control with X on the target.
        const CMatrix keep = embed({{gate.q0, proj0}}, n_qubits);
        const CMatrix flip = embed({{gate.q0, proj1}, {gate.q1, pauli_x}}, n_qubits);
        return add(keep, flip);
    }
    case GateKind::ZZPhase: {
        const cd agree = std::exp(-I * gate.angle);
        const cd differ = std::exp(I * gate.angle);
        CMatrix sum = scale(embed({{gate.q0, proj0}, {gate.q1, proj0}}, n_qubits), agree);
        sum = add(sum, scale(embed({{gate.q0, proj1}, {gate.q1, proj1}}, n_qubits), agree));
        sum = add(sum, scale(embed({{gate.q0, proj0}, {gate.q1, proj1}}, n_qubits), differ));
        sum = add(sum, scale(embed({{gate.q0, proj1}, {gate.q1, proj0}}, n_qubits), differ));
        return sum;
    }
    }
    throw std::logic_error("unreachable gate kind");
}

std::vector<cd> dense_simulate(std::span<const Gate> gates, int n_qubits) {
    std::vector<cd> psi(std::size_t{1} << n_qubits, cd{0.0, 0.0});
    psi[0] = cd{1.0, 0.0};
    for (const Gate& g : gates) {
        psi = matvec(gate_matrix(g, n_qubits), psi);
    }
    return psi;
}

double dense_expectation_z(const std::vector<cd>& psi, int n_qubits, int qubit) {
    const CMatrix z = embed({{qubit, CMatrix{{cd{1, 0}, cd{0, 0}}, {cd{0, 0}, cd{-1, 0}}}}},
                            n_qubits);
    const auto zpsi = matvec(z, psi);
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < psi.size(); ++i) acc += std::conj(psi[i]) * zpsi[i];
    return acc.real();
}

EigenResult jacobi_eigen_symmetric(const hqc::Matrix& sym, int max_sweeps) {
    const std::size_t n = sym.rows;
    hqc::Matrix a = sym;
    hqc::Matrix v(n, n);
    for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        }
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-18) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double phi = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(phi);
                const double s = std::sin(phi);
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v.at(k, p);
                    const double vkq = v.at(k, q);
                    v.at(k, p) = c * vkp - s * vkq;
                    v.at(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a.at(x, x) > a.at(y, y); });

    EigenResult result;
    result.values.resize(n);
    result.vectors = hqc::Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        result.values[i] = a.at(order[i], order[i]);
        for (std::size_t r = 0; r < n; ++r) result.vectors.at(r, i) = v.at(r, order[i]);
    }
    return result;
}

double pair_count_auc(std::span<const int> y_true, std::span<const double> scores,
                      bool higher_is_positive) {
    double wins = 0.0;
    std::int64_t pairs = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] != 1) continue;
        for (std::size_t j = 0; j < y_true.size(); ++j) {
            if (y_true[j] != 0) continue;
            ++pairs;
            const double pos = higher_is_positive ? scores[i] : -scores[i];
            const double neg = higher_is_positive ? scores[j] : -scores[j];
            if (pos > neg) {
                wins += 1.0;
            } else if (pos == neg) {
                wins += 0.5;
            }
        }
    }
    return wins / static_cast<double>(pairs);
}

}  // namespace oracles
