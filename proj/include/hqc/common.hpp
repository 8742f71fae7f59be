#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hqc {

// Invalid parameters, malformed configuration, dimension mismatches.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unreadable or malformed input data files.
class IngestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Output-side failures (unwritable directory, failed write).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failure inside a training loop; carries the iteration that failed.
class TrainError : public std::runtime_error {
public:
    TrainError(const std::string& msg, int iteration)
        : std::runtime_error(msg), iteration(iteration) {}
    int iteration = -1;
};

// Dense row-major matrix of doubles. Deliberately minimal; heavy linear
// algebra stays behind module boundaries.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    const double& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

    bool empty() const { return rows == 0 || cols == 0; }
};

}  // namespace hqc
