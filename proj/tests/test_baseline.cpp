#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hqc/baseline.hpp"
#include "hqc/model_io.hpp"
#include "hqc/prng.hpp"

using namespace hqc;
using namespace hqc::baseline;

namespace {

std::pair<Matrix, std::vector<int>> separable_1d() {
    Matrix X(8, 1);
    std::vector<int> y(8);
    for (int i = 0; i < 4; ++i) {
        X.at(static_cast<std::size_t>(i), 0) = -1.0 - 0.1 * i;
        y[static_cast<std::size_t>(i)] = 0;
        X.at(static_cast<std::size_t>(i + 4), 0) = 1.0 + 0.1 * i;
        y[static_cast<std::size_t>(i + 4)] = 1;
    }
    return {X, y};
}

}  // namespace

TEST_CASE("sigmoid at zero and in the tails") {
    LogisticModel model;
    model.weights = {0.0, 0.0};
    const std::vector<double> x{3.0, -4.0};
    CHECK(predict_proba(model, x) == doctest::Approx(0.5).epsilon(1e-15));

    model.weights = {1.0};
    model.bias = 0.0;
    const double e20 = 2.061153622438558e-9;  // 1 / (1 + e^20)
    CHECK(predict_proba(model, std::vector<double>{20.0}) ==
          doctest::Approx(1.0 - e20).epsilon(1e-12));
    CHECK(predict_proba(model, std::vector<double>{-20.0}) ==
          doctest::Approx(e20).epsilon(1e-6));

    // Extreme margins remain strictly inside (0, 1).
    const double hi = predict_proba(model, std::vector<double>{1000.0});
    const double lo = predict_proba(model, std::vector<double>{-1000.0});
    CHECK(hi < 1.0);
    CHECK(lo > 0.0);
}

TEST_CASE("probability is monotone in the margin") {
    LogisticModel model;
    model.weights = {2.0};
    double prev = 0.0;
    for (double v = -5.0; v <= 5.0; v += 0.25) {
        const double p = predict_proba(model, std::vector<double>{v});
        CHECK(p > prev);
        prev = p;
    }
}

TEST_CASE("separable data trains to full accuracy") {
    const auto [X, y] = separable_1d();
    LogisticFitConfig config;
    config.l2_strength = 0.01;
    const auto model = fit_logistic(X, y, config);
    for (std::size_t r = 0; r < X.rows; ++r) {
        const int pred = predict_proba(model, X.row(r)) >= 0.5 ? 1 : 0;
        CHECK(pred == y[r]);
    }
}

TEST_CASE("zero columns keep zero weights under zero init") {
    Matrix X(6, 2);
    std::vector<int> y{0, 0, 0, 1, 1, 1};
    for (std::size_t r = 0; r < 6; ++r) {
        X.at(r, 0) = r < 3 ? -1.0 : 1.0;
        X.at(r, 1) = 0.0;
    }
    const auto model = fit_logistic(X, y);
    CHECK(model.weights[1] == 0.0);
    CHECK(model.weights[0] > 0.0);
}

TEST_CASE("final loss does not exceed the zero-weight loss") {
    Xorshift64Star rng(44);
    Matrix X(30, 3);
    std::vector<int> y(30);
    for (std::size_t r = 0; r < 30; ++r) {
        for (std::size_t c = 0; c < 3; ++c) X.at(r, c) = rng.uniform(-1.0, 1.0);
        y[r] = rng.next_unit() < 0.5 ? 0 : 1;
    }
    if (std::count(y.begin(), y.end(), 0) == 0) y[0] = 0;
    if (std::count(y.begin(), y.end(), 1) == 0) y[1] = 1;

    const auto model = fit_logistic(X, y);
    LogisticModel zero;
    zero.weights.assign(3, 0.0);
    zero.l2_strength = model.l2_strength;
    CHECK(loss(model, X, y) <= loss(zero, X, y) + 1e-12);
}

TEST_CASE("analytic gradient matches central differences") {
    Xorshift64Star rng(909);
    Matrix X(12, 4);
    std::vector<int> y(12);
    for (std::size_t r = 0; r < 12; ++r) {
        for (std::size_t c = 0; c < 4; ++c) X.at(r, c) = rng.uniform(-2.0, 2.0);
        y[r] = r % 2 == 0 ? 0 : 1;
    }
    LogisticModel model;
    model.weights = {0.3, -0.2, 0.7, 0.1};
    model.bias = -0.4;
    model.l2_strength = 0.5;

    const auto grad = loss_gradient(model, X, y);
    const double eps = 1e-6;
    for (std::size_t j = 0; j <= 4; ++j) {
        LogisticModel up = model, down = model;
        if (j < 4) {
            up.weights[j] += eps;
            down.weights[j] -= eps;
        } else {
            up.bias += eps;
            down.bias -= eps;
        }
        const double fd = (loss(up, X, y) - loss(down, X, y)) / (2.0 * eps);
        CHECK(grad[j] == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("l2-regularized optimum is unique across restarts") {
    // Convexity: the same data with permuted rows reaches the same loss.
    const auto [X, y] = separable_1d();
    Matrix Xp(X.rows, 1);
    std::vector<int> yp(y.size());
    for (std::size_t r = 0; r < X.rows; ++r) {
        const std::size_t src = X.rows - 1 - r;
        Xp.at(r, 0) = X.at(src, 0);
        yp[r] = y[src];
    }
    LogisticFitConfig config;
    config.l2_strength = 1.0;
    const auto a = fit_logistic(X, y, config);
    const auto b = fit_logistic(Xp, yp, config);
    CHECK(std::abs(loss(a, X, y) - loss(b, X, y)) < 1e-6);
}

TEST_CASE("training validation") {
    Matrix X(4, 1);
    CHECK_THROWS_AS(fit_logistic(X, std::vector<int>{0, 0, 0, 0}), ConfigError);
    CHECK_THROWS_AS(fit_logistic(X, std::vector<int>{0, 1, 2, 0}), ConfigError);
    CHECK_THROWS_AS(fit_logistic(X, std::vector<int>{0, 1}), ConfigError);
    const Matrix empty;
    CHECK_THROWS_AS(fit_logistic(empty, std::vector<int>{}), ConfigError);

    LogisticModel model;
    model.weights = {1.0, 2.0};
    CHECK_THROWS_AS(predict_proba(model, std::vector<double>{1.0}), ConfigError);
}

TEST_CASE("logistic model round-trips through the text format") {
    const auto [X, y] = separable_1d();
    const auto model = fit_logistic(X, y);
    const std::string path = "test_logistic_model.txt";
    save_logistic(model, path);
    const auto loaded = load_logistic(path);
    CHECK(loaded.weights == model.weights);
    CHECK(loaded.bias == model.bias);
    CHECK(loaded.l2_strength == model.l2_strength);
    std::remove(path.c_str());
}
