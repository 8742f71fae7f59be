#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hqc/metrics.hpp"
#include "hqc/prng.hpp"
#include "oracles.hpp"

using namespace hqc;
using namespace hqc::metrics;

TEST_CASE("confusion counts with positive class 1") {
    const std::vector<int> yt{1, 1, 1, 0, 0};
    const std::vector<int> yp{1, 1, 0, 1, 0};
    const auto counts = confusion(yt, yp);
    CHECK(counts.tp == 2);
    CHECK(counts.fn == 1);
    CHECK(counts.fp == 1);
    CHECK(counts.tn == 1);
    CHECK(counts.total() == 5);
}

TEST_CASE("all-correct and all-missed corner cases") {
    const std::vector<int> yt{1, 0, 1, 0};
    const auto perfect = confusion(yt, yt);
    CHECK(perfect.fp == 0);
    CHECK(perfect.fn == 0);

    const std::vector<int> ones{1, 1, 1};
    const std::vector<int> zeros{0, 0, 0};
    const auto missed = confusion(ones, zeros);
    CHECK(missed.tp == 0);
    CHECK(missed.fn == 3);
}

TEST_CASE("confusion validation") {
    CHECK_THROWS_AS(confusion(std::vector<int>{0, 1}, std::vector<int>{0}), ConfigError);
    CHECK_THROWS_AS(confusion(std::vector<int>{0, 2}, std::vector<int>{0, 1}), ConfigError);
}

TEST_CASE("summary of the hand-counted example") {
    ConfusionCounts counts{2, 1, 1, 1};  // tp, fp, tn, fn
    const auto s = summary(counts);
    CHECK(s.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(s.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(s.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(s.accuracy == doctest::Approx(3.0 / 5.0).epsilon(1e-15));
    CHECK(s.precision_defined);
}

TEST_CASE("perfect predictions score 1 everywhere") {
    ConfusionCounts counts{10, 0, 10, 0};
    const auto s = summary(counts);
    CHECK(s.accuracy == 1.0);
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 1.0);
}

TEST_CASE("undefined precision is flagged, not fatal") {
    ConfusionCounts counts{0, 0, 3, 2};  // nothing predicted positive
    const auto s = summary(counts);
    CHECK_FALSE(s.precision_defined);
    CHECK(s.precision == 0.0);
    CHECK(s.f1 == 0.0);
    CHECK(s.accuracy == doctest::Approx(0.6).epsilon(1e-15));

    ConfusionCounts empty{0, 0, 0, 0};
    CHECK_THROWS_AS(summary(empty), ConfigError);
}

TEST_CASE("metric bounds hold on random counts") {
    Xorshift64Star rng(15);
    for (int trial = 0; trial < 50; ++trial) {
        ConfusionCounts counts{static_cast<std::int64_t>(rng.next_u64() % 20),
                               static_cast<std::int64_t>(rng.next_u64() % 20),
                               static_cast<std::int64_t>(rng.next_u64() % 20),
                               static_cast<std::int64_t>(rng.next_u64() % 20)};
        if (counts.total() == 0) continue;
        const auto s = summary(counts);
        for (double v : {s.accuracy, s.precision, s.recall, s.f1}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(s.accuracy == static_cast<double>(counts.tp + counts.tn) /
                                static_cast<double>(counts.total()));
    }
}

TEST_CASE("roc endpoints, monotonicity, and the hand-counted auc") {
    const std::vector<int> yt{1, 0, 1, 0};
    const std::vector<double> scores{0.9, 0.8, 0.3, 0.1};
    const auto curve = roc_auc(yt, scores, PositiveDirection::Higher);
    CHECK(curve.auc == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(curve.points.front() == std::pair{0.0, 0.0});
    CHECK(curve.points.back() == std::pair{1.0, 1.0});
    double fpr = -1.0, tpr = -1.0;
    for (const auto& [f, t] : curve.points) {
        CHECK(f >= fpr);
        CHECK(t >= tpr);
        fpr = f;
        tpr = t;
    }
}

TEST_CASE("perfectly separated scores reach auc 1") {
    const std::vector<int> yt{0, 0, 1, 1};
    const std::vector<double> scores{0.1, 0.2, 0.8, 0.9};
    CHECK(roc_auc(yt, scores, PositiveDirection::Higher).auc == doctest::Approx(1.0));
    // Lower-is-positive flips the same data.
    CHECK(roc_auc(yt, scores, PositiveDirection::Lower).auc == doctest::Approx(0.0));
}

TEST_CASE("random scores hover near auc one half") {
    Xorshift64Star rng(606);
    const std::size_t n = 4000;
    std::vector<int> yt(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        yt[i] = rng.next_unit() < 0.5 ? 1 : 0;
        scores[i] = rng.next_unit();
    }
    const auto curve = roc_auc(yt, scores, PositiveDirection::Higher);
    CHECK(std::abs(curve.auc - 0.5) < 0.05);
}

TEST_CASE("auc equals brute-force pair counting, ties included") {
    Xorshift64Star rng(42217);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.next_u64() % 196;
        std::vector<int> yt(n);
        std::vector<double> scores(n);
        bool has0 = false, has1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            yt[i] = rng.next_unit() < 0.4 ? 1 : 0;
            (yt[i] ? has1 : has0) = true;
            // Quantized scores generate plenty of ties.
            scores[i] = std::round(rng.uniform(0.0, 8.0)) / 8.0;
        }
        if (!has0) yt[0] = 0;
        if (!has1) yt[1] = 1;

        for (const auto dir : {PositiveDirection::Higher, PositiveDirection::Lower}) {
            const auto curve = roc_auc(yt, scores, dir);
            const double oracle =
                oracles::pair_count_auc(yt, scores, dir == PositiveDirection::Higher);
            CHECK(std::abs(curve.auc - oracle) < 1e-12);
        }
    }
}

TEST_CASE("auc is invariant under strictly monotone transforms") {
    Xorshift64Star rng(88);
    const std::size_t n = 300;
    std::vector<int> yt(n);
    std::vector<double> scores(n), warped(n);
    for (std::size_t i = 0; i < n; ++i) {
        yt[i] = rng.next_unit() < 0.5 ? 1 : 0;
        scores[i] = rng.uniform(-2.0, 2.0);
        warped[i] = std::exp(scores[i]) + 3.0 * scores[i];
    }
    yt[0] = 0;
    yt[1] = 1;
    const auto a = roc_auc(yt, scores, PositiveDirection::Higher);
    const auto b = roc_auc(yt, warped, PositiveDirection::Higher);
    CHECK(a.auc == doctest::Approx(b.auc).epsilon(1e-15));
}

TEST_CASE("roc validation") {
    CHECK_THROWS_AS(roc_auc(std::vector<int>{1, 1}, std::vector<double>{0.1, 0.2},
                            PositiveDirection::Higher),
                    ConfigError);
    CHECK_THROWS_AS(roc_auc(std::vector<int>{0, 1}, std::vector<double>{0.1},
                            PositiveDirection::Higher),
                    ConfigError);
    CHECK_THROWS_AS(roc_auc(std::vector<int>{0, 1},
                            std::vector<double>{0.1, std::numeric_limits<double>::quiet_NaN()},
                            PositiveDirection::Higher),
                    ConfigError);
}
