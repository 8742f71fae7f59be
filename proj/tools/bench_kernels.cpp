// Compares the serial reference kernels against the OpenMP kernels on random
// layered circuits, and reports the sample-parallel cost-evaluation rate.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hqc/circuits.hpp"
#include "hqc/prng.hpp"
#include "hqc/qsim.hpp"
#include "hqc/vqc.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using hqc::Xorshift64Star;
using namespace hqc::qsim;

std::vector<Gate> random_layers(int n_qubits, int layers, Xorshift64Star& rng) {
    std::vector<Gate> gates;
    for (int layer = 0; layer < layers; ++layer) {
        for (int q = 0; q < n_qubits; ++q) {
            switch (rng.next_u64() % 3) {
            case 0: gates.push_back(Gate::h(q)); break;
            case 1: gates.push_back(Gate::ry(q, rng.uniform(-3.14, 3.14))); break;
            default: gates.push_back(Gate::rz(q, rng.uniform(-3.14, 3.14))); break;
            }
        }
        for (int q = 0; q + 1 < n_qubits; ++q) {
            if (rng.next_u64() % 2) {
                gates.push_back(Gate::cnot(q, q + 1));
            } else {
                gates.push_back(Gate::zz_phase(q, q + 1, rng.uniform(-3.14, 3.14)));
            }
        }
    }
    return gates;
}

double time_circuit(int n_qubits, const std::vector<Gate>& gates, Exec exec, int repeats,
                    double& checksum) {
    double best = 1e300;
    for (int rep = 0; rep < repeats; ++rep) {
        auto state = zero_state(n_qubits);
        const auto t0 = std::chrono::steady_clock::now();
        apply_circuit(state, gates, exec);
        const double z = expectation_z(state, 0, exec);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        best = std::min(best, dt.count());
        checksum = z;
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"kernel benchmark: serial reference vs OpenMP"};
    std::vector<int> qubit_counts{12, 16, 18};
    int layers = 10;
    int repeats = 3;
    int cost_samples = 200;
    app.add_option("--qubits", qubit_counts, "qubit counts to benchmark");
    app.add_option("--layers", layers, "random circuit layers");
    app.add_option("--repeats", repeats, "timing repeats (best is reported)");
    app.add_option("--cost-samples", cost_samples, "rows for the cost-evaluation benchmark");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
    std::printf("openmp: disabled (serial fallback)\n");
#endif

    std::printf("%8s %8s %12s %12s %9s\n", "qubits", "gates", "serial_ms", "parallel_ms",
                "speedup");
    for (int n : qubit_counts) {
        Xorshift64Star rng(1234u + static_cast<unsigned>(n));
        const auto gates = random_layers(n, layers, rng);
        double z_serial = 0.0, z_parallel = 0.0;
        const double ts = time_circuit(n, gates, Exec::Serial, repeats, z_serial);
        const double tp = time_circuit(n, gates, Exec::Parallel, repeats, z_parallel);
        std::printf("%8d %8zu %12.3f %12.3f %8.2fx", n, gates.size(), ts * 1e3, tp * 1e3,
                    ts / tp);
        if (std::abs(z_serial - z_parallel) > 1e-12) {
            std::printf("  MISMATCH dZ=%.3e", z_serial - z_parallel);
        }
        std::printf("\n");
    }

    // Sample-parallel cost evaluation at a training-like size.
    {
        const int n = 12;
        Xorshift64Star rng(99);
        hqc::Matrix X(static_cast<std::size_t>(cost_samples), static_cast<std::size_t>(n));
        std::vector<int> y(static_cast<std::size_t>(cost_samples));
        for (std::size_t r = 0; r < X.rows; ++r) {
            for (std::size_t c = 0; c < X.cols; ++c) X.at(r, c) = rng.uniform(-1.5, 1.5);
            y[r] = static_cast<int>(rng.next_u64() % 2);
        }
        hqc::vqc::VqcModel shape;
        shape.feature_map.n_qubits = n;
        shape.ansatz.n_qubits = n;
        const auto theta = hqc::optim::random_init(
            hqc::circuits::parameter_count(shape.ansatz), -3.14, 3.14, 7);

        const auto t0 = std::chrono::steady_clock::now();
        const double c = hqc::vqc::cost(shape, theta, X, y);
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::printf("\ncost eval: %d samples x %dq -> %.3f ms (cost %.6f)\n", cost_samples, n,
                    dt.count() * 1e3, c);
    }
    return 0;
}
