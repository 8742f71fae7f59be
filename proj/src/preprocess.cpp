#include "hqc/preprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hqc::preprocess {

namespace {

constexpr double kZeroStd = 1e-15;

Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
as_eigen(const Matrix& m) {
    return {m.data.data(), static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols)};
}

// Largest-magnitude entry made positive; first such entry wins ties.
void fix_sign(Eigen::VectorXd& v) {
    Eigen::Index arg = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > best) {
            best = std::abs(v[i]);
            arg = i;
        }
    }
    if (v[arg] < 0.0) v = -v;
}

}  // namespace

ScalerModel fit_scaler(const Matrix& X) {
    if (X.rows < 2) {
        throw ConfigError("scaler needs at least 2 training rows, got " + std::to_string(X.rows));
    }
    const std::size_t d = X.cols;
    ScalerModel model;
    model.means.assign(d, 0.0);
    model.stds.assign(d, 0.0);
    model.zero_variance.assign(d, 0);

    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < d; ++c) model.means[c] += X.at(r, c);
    }
    const double n = static_cast<double>(X.rows);
    for (std::size_t c = 0; c < d; ++c) model.means[c] /= n;

    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            const double diff = X.at(r, c) - model.means[c];
            model.stds[c] += diff * diff;
        }
    }
    for (std::size_t c = 0; c < d; ++c) {
        model.stds[c] = std::sqrt(model.stds[c] / n);
        if (model.stds[c] < kZeroStd) {
            model.stds[c] = 0.0;
            model.zero_variance[c] = 1;
        }
    }
    return model;
}

Matrix transform_scaler(const ScalerModel& model, const Matrix& X) {
    if (X.cols != model.means.size()) {
        throw ConfigError("scaler fitted on " + std::to_string(model.means.size()) +
                          " features, got " + std::to_string(X.cols));
    }
    Matrix out(X.rows, X.cols);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            out.at(r, c) = model.zero_variance[c]
                               ? 0.0
                               : (X.at(r, c) - model.means[c]) / model.stds[c];
        }
    }
    return out;
}

PcaModel fit_pca(const Matrix& X, int n_components) {
    const auto rows = static_cast<Eigen::Index>(X.rows);
    const auto cols = static_cast<Eigen::Index>(X.cols);
    if (rows < 1 || cols < 1) {
        throw ConfigError("pca needs a non-empty training matrix");
    }
    const int max_components = static_cast<int>(std::min(X.rows, X.cols));
    if (n_components < 1 || n_components > max_components) {
        throw ConfigError("component count must be in [1, " + std::to_string(max_components) +
                          "], got " + std::to_string(n_components));
    }

    Eigen::MatrixXd centered = as_eigen(X);
    Eigen::RowVectorXd mean = centered.colwise().mean();
    centered.rowwise() -= mean;
    const double n = static_cast<double>(rows);

    PcaModel model;
    model.mean.assign(mean.data(), mean.data() + cols);
    model.components = Matrix(X.cols, static_cast<std::size_t>(n_components));
    model.explained_variance.resize(static_cast<std::size_t>(n_components));
    model.explained_variance_ratio.resize(static_cast<std::size_t>(n_components));

    const double total_variance = centered.squaredNorm() / n;

    std::vector<Eigen::VectorXd> comps;
    std::vector<double> eigvals;
    if (cols <= rows) {
        // Covariance route: eigenvectors of (X^T X) / N directly.
        Eigen::MatrixXd cov = (centered.transpose() * centered) / n;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
        if (solver.info() != Eigen::Success) {
            throw ConfigError("pca eigendecomposition failed");
        }
        for (int i = 0; i < n_components; ++i) {
            const Eigen::Index src = cols - 1 - i;  // solver sorts ascending
            Eigen::VectorXd v = solver.eigenvectors().col(src);
            fix_sign(v);
            comps.push_back(std::move(v));
            eigvals.push_back(std::max(solver.eigenvalues()[src], 0.0));
        }
    } else {
        // Gram route for wide data: same spectrum, components recovered as
        // X^T u and renormalized.
        Eigen::MatrixXd gram = (centered * centered.transpose()) / n;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
        if (solver.info() != Eigen::Success) {
            throw ConfigError("pca eigendecomposition failed");
        }
        for (int i = 0; i < n_components; ++i) {
            const Eigen::Index src = rows - 1 - i;
            const double lambda = std::max(solver.eigenvalues()[src], 0.0);
            Eigen::VectorXd v = centered.transpose() * solver.eigenvectors().col(src);
            const double len = v.norm();
            if (len > 1e-12) {
                v /= len;
            } else {
                // Rank-deficient tail: complete the basis from coordinate
                // axes, orthogonal to everything found so far.
                bool found = false;
                for (Eigen::Index axis = 0; axis < cols && !found; ++axis) {
                    Eigen::VectorXd cand = Eigen::VectorXd::Zero(cols);
                    cand[axis] = 1.0;
                    for (const auto& prev : comps) cand -= prev.dot(cand) * prev;
                    const double resid = cand.norm();
                    if (resid > 1e-8) {
                        v = cand / resid;
                        found = true;
                    }
                }
                if (!found) {
                    throw ConfigError("pca could not complete an orthonormal basis");
                }
            }
            fix_sign(v);
            comps.push_back(std::move(v));
            eigvals.push_back(lambda);
        }
    }

    for (int i = 0; i < n_components; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        model.explained_variance[ui] = eigvals[ui];
        model.explained_variance_ratio[ui] =
            total_variance > 0.0 ? eigvals[ui] / total_variance : 0.0;
        for (std::size_t r = 0; r < X.cols; ++r) {
            model.components.at(r, ui) = comps[ui][static_cast<Eigen::Index>(r)];
        }
    }
    return model;
}

Matrix transform_pca(const PcaModel& model, const Matrix& X) {
    if (X.cols != model.mean.size()) {
        throw ConfigError("pca fitted on " + std::to_string(model.mean.size()) +
                          " features, got " + std::to_string(X.cols));
    }
    const std::size_t n_out = model.components.cols;
    Matrix out(X.rows, n_out);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < n_out; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < X.cols; ++k) {
                acc += (X.at(r, k) - model.mean[k]) * model.components.at(k, c);
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

RangeModel fit_range(const Matrix& X, double angle) {
    if (X.rows < 1 || X.cols < 1) {
        throw ConfigError("range fit needs a non-empty training matrix");
    }
    if (!(angle > 0.0)) {
        throw ConfigError("target angle must be positive");
    }
    RangeModel model;
    model.angle = angle;
    model.lo.assign(X.cols, std::numeric_limits<double>::infinity());
    model.hi.assign(X.cols, -std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            model.lo[c] = std::min(model.lo[c], X.at(r, c));
            model.hi[c] = std::max(model.hi[c], X.at(r, c));
        }
    }
    return model;
}

Matrix transform_range(const RangeModel& model, const Matrix& X) {
    if (X.cols != model.lo.size()) {
        throw ConfigError("range model fitted on " + std::to_string(model.lo.size()) +
                          " features, got " + std::to_string(X.cols));
    }
    Matrix out(X.rows, X.cols);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            const double span = model.hi[c] - model.lo[c];
            double u = span > 0.0 ? (X.at(r, c) - model.lo[c]) / span : 0.5;
            u = std::clamp(u, 0.0, 1.0);
            out.at(r, c) = model.angle * (2.0 * u - 1.0);
        }
    }
    return out;
}

std::vector<std::pair<int, double>> cumulative_variance_report(const PcaModel& model) {
    std::vector<std::pair<int, double>> table;
    table.reserve(model.explained_variance_ratio.size());
    double running = 0.0;
    for (std::size_t i = 0; i < model.explained_variance_ratio.size(); ++i) {
        running += model.explained_variance_ratio[i];
        table.emplace_back(static_cast<int>(i) + 1, 100.0 * running);
    }
    return table;
}

}  // namespace hqc::preprocess
