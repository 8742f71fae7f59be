#include "hqc/optim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hqc/common.hpp"
#include "hqc/prng.hpp"

namespace hqc::optim {

namespace {

// Powell's simplex-quality constants: vertices must sit at least
// kAlpha*rho from the opposite face and at most kBeta*rho from the best
// vertex; geometry-repair steps have length kGamma*rho; kDelta*rho is the
// edge length that justifies dropping a far vertex after a good step.
constexpr double kAlpha = 0.25;
constexpr double kBeta = 2.1;
constexpr double kGamma = 0.5;
constexpr double kDelta = 1.1;

struct BudgetStop {};

class Evaluator {
public:
    Evaluator(const Objective& obj, int max_evals) : obj_(obj), max_evals_(max_evals) {}

    double operator()(const std::vector<double>& x) {
        if (used_ >= max_evals_) throw BudgetStop{};
        const double f = obj_(x);
        if (!std::isfinite(f)) {
            throw OptimError("objective returned a non-finite value at evaluation " +
                                 std::to_string(used_),
                             x, used_);
        }
        history_.emplace_back(used_, f);
        if (f < best_value_) {
            best_value_ = f;
            best_point_ = x;
        }
        ++used_;
        return f;
    }

    int used() const { return used_; }
    double best_value() const { return best_value_; }
    const std::vector<double>& best_point() const { return best_point_; }
    std::vector<std::pair<int, double>> take_history() { return std::move(history_); }

private:
    const Objective& obj_;
    int max_evals_;
    int used_ = 0;
    std::vector<std::pair<int, double>> history_;
    double best_value_ = std::numeric_limits<double>::infinity();
    std::vector<double> best_point_;
};

double dot(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// Inverts the matrix whose columns are the simplex offsets. Returns false
// and reports the stuck pivot column when the offsets are (numerically)
// affinely dependent.
bool invert_offsets(const std::vector<std::vector<double>>& offset,
                    std::vector<std::vector<double>>& inv_rows, int& bad_column) {
    const int d = static_cast<int>(offset.size());
    // work = [S | I], S(i, j) = offset[j][i]
    std::vector<std::vector<double>> work(d, std::vector<double>(2 * d, 0.0));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) work[i][j] = offset[j][i];
        work[i][d + i] = 1.0;
    }
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int r = col + 1; r < d; ++r) {
            if (std::abs(work[r][col]) > std::abs(work[pivot][col])) pivot = r;
        }
        if (std::abs(work[pivot][col]) < 1e-14) {
            bad_column = col;
            return false;
        }
        std::swap(work[col], work[pivot]);
        const double inv_p = 1.0 / work[col][col];
        for (int c = col; c < 2 * d; ++c) work[col][c] *= inv_p;
        for (int r = 0; r < d; ++r) {
            if (r == col) continue;
            const double factor = work[r][col];
            if (factor == 0.0) continue;
            for (int c = col; c < 2 * d; ++c) work[r][c] -= factor * work[col][c];
        }
    }
    inv_rows.assign(d, std::vector<double>(d, 0.0));
    // Row j of S^-1 gives the barycentric weight of vertex j.
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) inv_rows[j][i] = work[j][d + i];
    }
    return true;
}

}  // namespace

std::vector<double> random_init(int dimension, double low, double high, std::uint64_t seed) {
    if (dimension < 1) {
        throw ConfigError("random_init dimension must be at least 1");
    }
    if (!(low < high)) {
        throw ConfigError("random_init needs low < high");
    }
    Xorshift64Star rng(seed);
    std::vector<double> v(static_cast<std::size_t>(dimension));
    for (double& x : v) x = rng.uniform(low, high);
    return v;
}

OptimResult cobyla_minimize(const Objective& objective, std::span<const double> start,
                            const OptimizerConfig& config) {
    const int d = static_cast<int>(start.size());
    if (d < 1) throw ConfigError("optimization dimension must be at least 1");
    if (config.max_evaluations < 1) throw ConfigError("max_evaluations must be at least 1");
    if (!(config.rho_begin > 0.0) || !(config.rho_end > 0.0)) {
        throw ConfigError("trust-region radii must be positive");
    }
    if (!(config.rho_end < config.rho_begin)) {
        throw ConfigError("rho_end must be smaller than rho_begin");
    }

    Evaluator eval(objective, config.max_evaluations);
    Termination termination = Termination::BudgetExhausted;

    // Simplex state: the pole is the best vertex; offset[j] is vertex j
    // relative to the pole, with objective value fval[j].
    std::vector<double> pole(start.begin(), start.end());
    double fpole = 0.0;
    std::vector<std::vector<double>> offset(d, std::vector<double>(d, 0.0));
    std::vector<double> fval(static_cast<std::size_t>(d), 0.0);
    double rho = config.rho_begin;

    try {
        fpole = eval(pole);
        for (int j = 0; j < d; ++j) {
            std::vector<double> cand = pole;
            cand[j] += rho;
            const double fc = eval(cand);
            if (fc < fpole) {
                // Recenter on the improved point; earlier vertices shift.
                for (int k = 0; k < j; ++k) offset[k][j] -= rho;
                offset[j].assign(static_cast<std::size_t>(d), 0.0);
                offset[j][j] = -rho;
                fval[j] = fpole;
                pole = std::move(cand);
                fpole = fc;
            } else {
                offset[j][j] = rho;
                fval[j] = fc;
            }
        }

        std::vector<std::vector<double>> inv_rows;
        std::vector<double> g(static_cast<std::size_t>(d));
        std::vector<double> vsig(static_cast<std::size_t>(d));
        std::vector<double> veta(static_cast<std::size_t>(d));
        std::vector<double> sigbar(static_cast<std::size_t>(d));
        bool tr_branch = true;  // take a trust-region step before checking geometry

        while (true) {
            // Promote the best vertex to the pole.
            int best = -1;
            for (int j = 0; j < d; ++j) {
                if (fval[j] < fpole && (best < 0 || fval[j] < fval[best])) best = j;
            }
            if (best >= 0) {
                std::vector<double> shift = offset[best];
                for (int i = 0; i < d; ++i) pole[i] += shift[i];
                for (int j = 0; j < d; ++j) {
                    for (int i = 0; i < d; ++i) offset[j][i] -= shift[i];
                }
                offset[best] = std::vector<double>(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) offset[best][i] = -shift[i];
                std::swap(fpole, fval[best]);
            }

            int bad_column = -1;
            if (!invert_offsets(offset, inv_rows, bad_column)) {
                // Degenerate simplex: rebuild the offending vertex at
                // distance rho along the least-represented coordinate axis.
                int axis = 0;
                double least = std::numeric_limits<double>::infinity();
                for (int m = 0; m < d; ++m) {
                    double rep = 0.0;
                    for (int j = 0; j < d; ++j) {
                        const double len2 = dot(offset[j], offset[j]);
                        if (len2 > 0.0) rep += offset[j][m] * offset[j][m] / len2;
                    }
                    if (rep < least) {
                        least = rep;
                        axis = m;
                    }
                }
                std::vector<double> cand = pole;
                cand[axis] += rho;
                const double fc = eval(cand);
                offset[bad_column].assign(static_cast<std::size_t>(d), 0.0);
                offset[bad_column][axis] = rho;
                fval[bad_column] = fc;
                continue;
            }

            // Linear interpolation model: gradient g solves S^T g = df.
            std::fill(g.begin(), g.end(), 0.0);
            for (int j = 0; j < d; ++j) {
                const double df = fval[j] - fpole;
                for (int i = 0; i < d; ++i) g[i] += df * inv_rows[j][i];
            }

            const double parsig = kAlpha * rho;
            const double pareta = kBeta * rho;
            bool acceptable = true;
            for (int j = 0; j < d; ++j) {
                vsig[j] = 1.0 / norm(inv_rows[j]);
                veta[j] = norm(offset[j]);
                if (vsig[j] < parsig || veta[j] > pareta) acceptable = false;
            }

            if (!tr_branch && !acceptable) {
                // Geometry repair: move the worst-placed vertex to distance
                // kGamma*rho along its thin direction, downhill per the model.
                int jdrop = -1;
                double worst = pareta;
                for (int j = 0; j < d; ++j) {
                    if (veta[j] > worst) {
                        worst = veta[j];
                        jdrop = j;
                    }
                }
                if (jdrop < 0) {
                    worst = pareta;
                    for (int j = 0; j < d; ++j) {
                        if (vsig[j] < worst) {
                            worst = vsig[j];
                            jdrop = j;
                        }
                    }
                }
                std::vector<double> dx(static_cast<std::size_t>(d));
                const double scale = kGamma * rho * vsig[jdrop];
                for (int i = 0; i < d; ++i) dx[i] = scale * inv_rows[jdrop][i];
                if (dot(g, dx) > 0.0) {
                    for (double& v : dx) v = -v;
                }
                std::vector<double> cand(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) cand[i] = pole[i] + dx[i];
                const double fc = eval(cand);
                offset[jdrop] = std::move(dx);
                fval[jdrop] = fc;
                tr_branch = true;
                continue;
            }
            tr_branch = false;

            // Trust-region step: full length rho against the model gradient.
            const double gnorm = norm(g);
            if (gnorm > 1e-300) {
                std::vector<double> dx(static_cast<std::size_t>(d));
                const double scale = -rho / gnorm;
                for (int i = 0; i < d; ++i) dx[i] = scale * g[i];
                const double prerem = rho * gnorm;  // model reduction over the step

                std::vector<double> cand(static_cast<std::size_t>(d));
                for (int i = 0; i < d; ++i) cand[i] = pole[i] + dx[i];
                const double fnew = eval(cand);
                const double trured = fpole - fnew;

                // Choose the vertex to replace: improving points must enter
                // the simplex; otherwise only a clear geometry gain counts.
                double ratio = trured <= 0.0 ? 1.0 : 0.0;
                int jdrop = -1;
                for (int j = 0; j < d; ++j) {
                    const double w = std::abs(dot(inv_rows[j], dx));
                    if (w > ratio) {
                        ratio = w;
                        jdrop = j;
                    }
                    sigbar[j] = w * vsig[j];
                }
                double edgmax = kDelta * rho;
                int far_vertex = -1;
                for (int j = 0; j < d; ++j) {
                    if (sigbar[j] >= parsig || sigbar[j] >= vsig[j]) {
                        double measure;
                        if (trured > 0.0) {
                            double acc = 0.0;
                            for (int i = 0; i < d; ++i) {
                                const double diff = dx[i] - offset[j][i];
                                acc += diff * diff;
                            }
                            measure = std::sqrt(acc);
                        } else {
                            measure = veta[j];
                        }
                        if (measure > edgmax) {
                            edgmax = measure;
                            far_vertex = j;
                        }
                    }
                }
                if (far_vertex >= 0) jdrop = far_vertex;
                if (jdrop >= 0) {
                    offset[jdrop] = std::move(dx);
                    fval[jdrop] = fnew;
                }
                if (trured > 0.0 && trured >= 0.1 * prerem) {
                    tr_branch = true;  // productive step, go straight for another
                    continue;
                }
            }

            if (!acceptable) continue;  // fix geometry before judging rho

            if (rho > config.rho_end) {
                rho *= 0.5;
                if (rho <= 1.5 * config.rho_end) rho = config.rho_end;
                tr_branch = true;  // step at the new radius before geometry work
                continue;
            }
            termination = Termination::RhoConverged;
            break;
        }
    } catch (const BudgetStop&) {
        termination = Termination::BudgetExhausted;
    }

    OptimResult result;
    result.history = eval.take_history();
    result.evaluations_used = eval.used();
    result.best_value = eval.best_value();
    result.best_point = eval.best_point();
    result.termination = termination;
    return result;
}

}  // namespace hqc::optim
