#include "hqc/qsim.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

// Gate kernels, serial and OpenMP flavours. Both flavours perform the exact
// same floating-point operations per amplitude; only the iteration strategy
// differs, so their results are bit-identical.

namespace hqc::qsim::kernels {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

inline std::uint64_t insert_zero_bit(std::uint64_t k, int q) {
    // Spread k over the index space leaving bit q clear.
    const std::uint64_t low_mask = (std::uint64_t{1} << q) - 1;
    return ((k & ~low_mask) << 1) | (k & low_mask);
}

}  // namespace

void apply_gate_serial(amp_t* amps, std::uint64_t dim, const Gate& gate) {
    switch (gate.kind) {
    case GateKind::H: {
        const std::uint64_t stride = std::uint64_t{1} << gate.q0;
        for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
            for (std::uint64_t i = base; i < base + stride; ++i) {
                const amp_t a0 = amps[i];
                const amp_t a1 = amps[i + stride];
                amps[i] = kInvSqrt2 * (a0 + a1);
                amps[i + stride] = kInvSqrt2 * (a0 - a1);
            }
        }
        break;
    }
    case GateKind::RY: {
        const std::uint64_t stride = std::uint64_t{1} << gate.q0;
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        for (std::uint64_t base = 0; base < dim; base += 2 * stride) {
            for (std::uint64_t i = base; i < base + stride; ++i) {
                const amp_t a0 = amps[i];
                const amp_t a1 = amps[i + stride];
                amps[i] = c * a0 - s * a1;
                amps[i + stride] = s * a0 + c * a1;
            }
        }
        break;
    }
    case GateKind::RZ: {
        const amp_t phase0 = std::polar(1.0, -0.5 * gate.angle);
        const amp_t phase1 = std::polar(1.0, 0.5 * gate.angle);
        for (std::uint64_t i = 0; i < dim; ++i) {
            amps[i] *= ((i >> gate.q0) & 1) ? phase1 : phase0;
        }
        break;
    }
    case GateKind::CNOT: {
        const std::uint64_t cbit = std::uint64_t{1} << gate.q0;
        const std::uint64_t tbit = std::uint64_t{1} << gate.q1;
        for (std::uint64_t i = 0; i < dim; ++i) {
            if ((i & cbit) && !(i & tbit)) {
                std::swap(amps[i], amps[i | tbit]);
            }
        }
        break;
    }
    case GateKind::ZZPhase: {
        const amp_t agree = std::polar(1.0, -gate.angle);
        const amp_t differ = std::polar(1.0, gate.angle);
        for (std::uint64_t i = 0; i < dim; ++i) {
            const bool ba = (i >> gate.q0) & 1;
            const bool bb = (i >> gate.q1) & 1;
            amps[i] *= (ba == bb) ? agree : differ;
        }
        break;
    }
    }
}

void apply_gate_parallel(amp_t* amps, std::uint64_t dim, const Gate& gate) {
#ifndef _OPENMP
    apply_gate_serial(amps, dim, gate);
#else
    const std::int64_t n = static_cast<std::int64_t>(dim);
    switch (gate.kind) {
    case GateKind::H: {
        const std::uint64_t stride = std::uint64_t{1} << gate.q0;
        const std::int64_t pairs = n / 2;
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < pairs; ++k) {
            const std::uint64_t i = insert_zero_bit(static_cast<std::uint64_t>(k), gate.q0);
            const amp_t a0 = amps[i];
            const amp_t a1 = amps[i + stride];
            amps[i] = kInvSqrt2 * (a0 + a1);
            amps[i + stride] = kInvSqrt2 * (a0 - a1);
        }
        break;
    }
    case GateKind::RY: {
        const std::uint64_t stride = std::uint64_t{1} << gate.q0;
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        const std::int64_t pairs = n / 2;
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < pairs; ++k) {
            const std::uint64_t i = insert_zero_bit(static_cast<std::uint64_t>(k), gate.q0);
            const amp_t a0 = amps[i];
            const amp_t a1 = amps[i + stride];
            amps[i] = c * a0 - s * a1;
            amps[i + stride] = s * a0 + c * a1;
        }
        break;
    }
    case GateKind::RZ: {
        const amp_t phase0 = std::polar(1.0, -0.5 * gate.angle);
        const amp_t phase1 = std::polar(1.0, 0.5 * gate.angle);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            amps[i] *= ((static_cast<std::uint64_t>(i) >> gate.q0) & 1) ? phase1 : phase0;
        }
        break;
    }
    case GateKind::CNOT: {
        const std::uint64_t cbit = std::uint64_t{1} << gate.q0;
        const std::uint64_t tbit = std::uint64_t{1} << gate.q1;
        // Each index with control set and target clear owns its swap partner,
        // so iterations never touch the same pair twice.
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const std::uint64_t u = static_cast<std::uint64_t>(i);
            if ((u & cbit) && !(u & tbit)) {
                std::swap(amps[u], amps[u | tbit]);
            }
        }
        break;
    }
    case GateKind::ZZPhase: {
        const amp_t agree = std::polar(1.0, -gate.angle);
        const amp_t differ = std::polar(1.0, gate.angle);
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const bool ba = (static_cast<std::uint64_t>(i) >> gate.q0) & 1;
            const bool bb = (static_cast<std::uint64_t>(i) >> gate.q1) & 1;
            amps[i] *= (ba == bb) ? agree : differ;
        }
        break;
    }
    }
#endif
}

double expectation_z_serial(const amp_t* amps, std::uint64_t dim, int qubit) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double p = std::norm(amps[i]);
        acc += ((i >> qubit) & 1) ? -p : p;
    }
    return acc;
}

double expectation_z_parallel(const amp_t* amps, std::uint64_t dim, int qubit) {
#ifndef _OPENMP
    return expectation_z_serial(amps, dim, qubit);
#else
    const int max_threads = omp_get_max_threads();
    std::vector<double> partial(static_cast<std::size_t>(max_threads), 0.0);
    const std::int64_t n = static_cast<std::int64_t>(dim);
#pragma omp parallel
    {
        double local = 0.0;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const double p = std::norm(amps[i]);
            local += ((static_cast<std::uint64_t>(i) >> qubit) & 1) ? -p : p;
        }
        partial[static_cast<std::size_t>(omp_get_thread_num())] = local;
    }
    // Combine in thread order so the result does not depend on scheduling.
    double acc = 0.0;
    for (double v : partial) acc += v;
    return acc;
#endif
}

}  // namespace hqc::qsim::kernels
