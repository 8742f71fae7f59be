#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hqc/preprocess.hpp"
#include "hqc/prng.hpp"
#include "oracles.hpp"

using namespace hqc;
using namespace hqc::preprocess;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Matrix m(rows, cols);
    Xorshift64Star rng(seed);
    for (auto& v : m.data) v = rng.uniform(-2.0, 2.0);
    return m;
}

Matrix covariance(const Matrix& X) {
    Matrix cov(X.cols, X.cols);
    std::vector<double> mean(X.cols, 0.0);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) mean[c] += X.at(r, c);
    }
    for (auto& m : mean) m /= static_cast<double>(X.rows);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t i = 0; i < X.cols; ++i) {
            for (std::size_t j = 0; j < X.cols; ++j) {
                cov.at(i, j) += (X.at(r, i) - mean[i]) * (X.at(r, j) - mean[j]);
            }
        }
    }
    for (auto& v : cov.data) v /= static_cast<double>(X.rows);
    return cov;
}

// Trace of W^T C W for the first two columns of a rotation Q(angles) in 4-d,
// maximized by coordinate pattern search over the six Givens angles. Trace
// maximization over subspaces has no spurious local maxima, so this is an
// independent route to the PCA optimum.
double best_two_dim_trace(const Matrix& cov) {
    const std::array<std::pair<int, int>, 6> planes{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    std::array<double, 6> angles{};

    const auto trace_for = [&](const std::array<double, 6>& a) {
        // Q starts as identity; apply Givens rotations in sequence.
        Matrix q(4, 4);
        for (int i = 0; i < 4; ++i) q.at(i, i) = 1.0;
        for (int g = 0; g < 6; ++g) {
            const auto [p, r] = planes[g];
            const double c = std::cos(a[g]);
            const double s = std::sin(a[g]);
            for (int row = 0; row < 4; ++row) {
                const double vp = q.at(row, p);
                const double vr = q.at(row, r);
                q.at(row, p) = c * vp - s * vr;
                q.at(row, r) = s * vp + c * vr;
            }
        }
        double acc = 0.0;
        for (int col = 0; col < 2; ++col) {
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) {
                    acc += q.at(i, col) * cov.at(i, j) * q.at(j, col);
                }
            }
        }
        return acc;
    };

    double best = trace_for(angles);
    double step = 0.5;
    while (step > 1e-5) {
        bool improved = false;
        for (int g = 0; g < 6; ++g) {
            for (const double delta : {step, -step}) {
                auto trial = angles;
                trial[g] += delta;
                const double t = trace_for(trial);
                if (t > best + 1e-15) {
                    best = t;
                    angles = trial;
                    improved = true;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
    return best;
}

}  // namespace

TEST_CASE("scaler statistics use the population convention") {
    Matrix X(3, 1);
    X.at(0, 0) = 1.0;
    X.at(1, 0) = 2.0;
    X.at(2, 0) = 3.0;
    const auto model = fit_scaler(X);
    CHECK(model.means[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(model.stds[0] == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));

    const auto scaled = transform_scaler(model, X);
    CHECK(scaled.at(0, 0) == doctest::Approx(-1.2247).epsilon(1e-4));
    CHECK(scaled.at(1, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(scaled.at(2, 0) == doctest::Approx(1.2247).epsilon(1e-4));
}

TEST_CASE("constant features are flagged and transform to zero") {
    Matrix X(3, 2);
    for (std::size_t r = 0; r < 3; ++r) {
        X.at(r, 0) = 5.0;
        X.at(r, 1) = static_cast<double>(r);
    }
    const auto model = fit_scaler(X);
    CHECK(model.means[0] == 5.0);
    CHECK(model.stds[0] == 0.0);
    CHECK(model.zero_variance[0] == 1);
    CHECK(model.zero_variance[1] == 0);
    const auto out = transform_scaler(model, X);
    for (std::size_t r = 0; r < 3; ++r) CHECK(out.at(r, 0) == 0.0);
}

TEST_CASE("scaling the training data gives mean 0 and std 1") {
    const auto X = random_matrix(50, 4, 99);
    const auto model = fit_scaler(X);
    const auto scaled = transform_scaler(model, X);
    const auto again = fit_scaler(scaled);
    for (std::size_t c = 0; c < 4; ++c) {
        CHECK(std::abs(again.means[c]) < 1e-10);
        CHECK(std::abs(again.stds[c] - 1.0) < 1e-10);
    }
}

TEST_CASE("scaler validation") {
    Matrix one(1, 2);
    CHECK_THROWS_AS(fit_scaler(one), ConfigError);
    const auto model = fit_scaler(random_matrix(5, 3, 1));
    Matrix wrong(2, 4);
    CHECK_THROWS_AS(transform_scaler(model, wrong), ConfigError);
}

TEST_CASE("rank-1 data yields the diagonal component with full variance") {
    Matrix X(20, 2);
    Xorshift64Star rng(17);
    for (std::size_t r = 0; r < 20; ++r) {
        const double t = rng.uniform(-3.0, 3.0);
        X.at(r, 0) = t;
        X.at(r, 1) = t;
    }
    const auto model = fit_pca(X, 2);
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    CHECK(std::abs(std::abs(model.components.at(0, 0)) - inv_sqrt2) < 1e-10);
    CHECK(std::abs(std::abs(model.components.at(1, 0)) - inv_sqrt2) < 1e-10);
    CHECK(model.explained_variance_ratio[0] == doctest::Approx(1.0).epsilon(1e-10));

    // Second coordinate of the projection is ~0 everywhere.
    const auto projected = transform_pca(model, X);
    for (std::size_t r = 0; r < 20; ++r) CHECK(std::abs(projected.at(r, 1)) < 1e-8);
}

TEST_CASE("isotropic gaussian splits variance evenly") {
    Matrix X(10000, 2);
    Xorshift64Star rng(2718);
    for (auto& v : X.data) v = rng.normal();
    const auto model = fit_pca(X, 2);
    CHECK(model.explained_variance_ratio[0] == doctest::Approx(0.5).epsilon(0.2));
    CHECK(model.explained_variance_ratio[1] == doctest::Approx(0.5).epsilon(0.2));
    CHECK(std::abs(model.explained_variance_ratio[0] - 0.5) < 0.1);
    CHECK(std::abs(model.explained_variance_ratio[1] - 0.5) < 0.1);
}

TEST_CASE("pca matches the jacobi eigensolver oracle") {
    for (const std::size_t d : {4u, 12u, 50u}) {
        const auto X = random_matrix(d + 20, d, 1000 + d);
        const int n_components = static_cast<int>(d / 2 + 1);
        const auto model = fit_pca(X, n_components);
        const auto oracle = oracles::jacobi_eigen_symmetric(covariance(X));
        for (int i = 0; i < n_components; ++i) {
            CHECK(model.explained_variance[static_cast<std::size_t>(i)] ==
                  doctest::Approx(oracle.values[static_cast<std::size_t>(i)]).epsilon(1e-8));
        }
    }
}

TEST_CASE("component matrix is orthonormal") {
    const auto X = random_matrix(40, 10, 512);
    const auto model = fit_pca(X, 6);
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            double dot = 0.0;
            for (std::size_t r = 0; r < 10; ++r) {
                dot += model.components.at(r, a) * model.components.at(r, b);
            }
            CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-8);
        }
    }
}

TEST_CASE("covariance and gram routes agree") {
    // 6 rows x 10 features forces the gram path; duplicate the data tall to
    // drive the covariance path over the same spectrum.
    const auto wide = random_matrix(6, 10, 31);
    const auto gram_model = fit_pca(wide, 4);

    Matrix tall(12, 10);
    for (std::size_t r = 0; r < 12; ++r) {
        for (std::size_t c = 0; c < 10; ++c) tall.at(r, c) = wide.at(r % 6, c);
    }
    const auto cov_model = fit_pca(tall, 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(gram_model.explained_variance_ratio[static_cast<std::size_t>(i)] ==
              doctest::Approx(cov_model.explained_variance_ratio[static_cast<std::size_t>(i)])
                  .epsilon(1e-8));
        for (std::size_t r = 0; r < 10; ++r) {
            CHECK(std::abs(gram_model.components.at(r, static_cast<std::size_t>(i)) -
                           cov_model.components.at(r, static_cast<std::size_t>(i))) < 1e-7);
        }
    }
}

TEST_CASE("transforming the training mean gives the zero vector") {
    const auto X = random_matrix(15, 5, 89);
    const auto model = fit_pca(X, 3);
    Matrix mean_row(1, 5);
    for (std::size_t c = 0; c < 5; ++c) mean_row.at(0, c) = model.mean[c];
    const auto projected = transform_pca(model, mean_row);
    for (std::size_t c = 0; c < 3; ++c) CHECK(std::abs(projected.at(0, c)) < 1e-12);
}

TEST_CASE("full-rank projection round-trips the data") {
    const auto X = random_matrix(30, 6, 77);
    const auto model = fit_pca(X, 6);
    const auto projected = transform_pca(model, X);
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (std::size_t c = 0; c < X.cols; ++c) {
            double acc = model.mean[c];
            for (std::size_t k = 0; k < 6; ++k) {
                acc += projected.at(r, k) * model.components.at(c, k);
            }
            CHECK(std::abs(acc - X.at(r, c)) < 1e-8);
        }
    }
}

TEST_CASE("projected variance matches exhaustive subspace search") {
    for (std::uint64_t seed : {11u, 22u, 33u}) {
        const auto X = random_matrix(6, 4, seed);
        const auto model = fit_pca(X, 2);
        const double fit_trace = model.explained_variance[0] + model.explained_variance[1];
        const double searched = best_two_dim_trace(covariance(X));
        CHECK(std::abs(fit_trace - searched) < 1e-3);
    }
}

TEST_CASE("cumulative variance report") {
    PcaModel model;
    model.explained_variance_ratio = {0.5, 0.3, 0.2};
    const auto table = cumulative_variance_report(model);
    REQUIRE(table.size() == 3);
    CHECK(table[0] == std::pair{1, 50.0});
    CHECK(table[1].second == doctest::Approx(80.0).epsilon(1e-12));
    CHECK(table[2].second == doctest::Approx(100.0).epsilon(1e-12));

    PcaModel single;
    single.explained_variance_ratio = {0.37};
    const auto one = cumulative_variance_report(single);
    CHECK(one[0].second == doctest::Approx(37.0).epsilon(1e-12));
}

TEST_CASE("cumulative ratio is monotone and bounded by 100") {
    const auto X = random_matrix(25, 8, 404);
    const auto model = fit_pca(X, 8);
    const auto table = cumulative_variance_report(model);
    double prev = 0.0;
    for (const auto& [n, pct] : table) {
        CHECK(pct >= prev - 1e-10);
        CHECK(pct <= 100.0 + 1e-8);
        prev = pct;
    }
}

TEST_CASE("transform is a pure function of the fitted model") {
    // Leakage guard: a different test matrix cannot change the model, and
    // transforming twice gives identical results.
    const auto train = random_matrix(20, 5, 61);
    const auto model = fit_pca(train, 3);
    auto test_a = random_matrix(4, 5, 62);
    auto test_b = test_a;
    test_b.at(0, 0) += 100.0;
    const auto ta = transform_pca(model, test_a);
    const auto model_again = fit_pca(train, 3);
    const auto ta_again = transform_pca(model_again, test_a);
    CHECK(ta.data == ta_again.data);
    CHECK(model.components.data == model_again.components.data);
    (void)transform_pca(model, test_b);
}

TEST_CASE("pca validation") {
    const auto X = random_matrix(10, 4, 3);
    CHECK_THROWS_AS(fit_pca(X, 0), ConfigError);
    CHECK_THROWS_AS(fit_pca(X, 5), ConfigError);
    const auto model = fit_pca(X, 2);
    Matrix wrong(3, 7);
    CHECK_THROWS_AS(transform_pca(model, wrong), ConfigError);
}
