// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "vsd/loss.hpp"

using namespace vsd;

namespace {

// Logits whose softmax puts exactly e^-1 on the target, so the
// cross-entropy of the target position is exactly 1.
void set_unit_ce_logits(LogitsTensor& logits, std::size_t row, std::size_t pos, TokenId target) {
    const int vocab = logits.vocab();
    const double other = std::log((std::exp(1.0) - 1.0) / (vocab - 1));
    for (TokenId v = 0; v < vocab; v++) logits.at(row, pos, v) = other;
    logits.at(row, pos, target) = 0.0;
}

LabelMatrix labels_from_rows(const std::vector<TokenIds>& rows) {
    LabelMatrix m(static_cast<int>(rows.size()) - 1, rows[0].size());
    for (std::size_t i = 0; i < rows.size(); i++)
        for (std::size_t s = 0; s < rows[i].size(); s++) m.at(i, s) = rows[i][s];
    return m;
}

}  // namespace

TEST_CASE("lambda schedule endpoints and midpoint") {
    const LossConfig cfg;
    CHECK(lambda_schedule(0.0, cfg) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(lambda_schedule(1.0, cfg) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(lambda_schedule(0.5, cfg) == doctest::Approx(0.2 * std::sin(M_PI / 4)).epsilon(1e-12));
    double prev = -1.0;
    for (int i = 0; i <= 100; i++) {
        const double v = lambda_schedule(i / 100.0, cfg);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("lambda at zero removes the head terms") {
    const int V = 8;
    LabelMatrix labels = labels_from_rows({{5, 6}, {6, kIgnoreId}});
    LogitsTensor logits(1, 2, V);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (std::size_t r = 0; r < 2; r++)
        for (std::size_t s = 0; s < 2; s++)
            for (TokenId v = 0; v < V; v++) logits.at(r, s, v) = u(rng);
    const auto loss = compute_multihead_loss(logits, labels, 0.0, LossConfig{});
    CHECK(loss.total == loss.base);
}

TEST_CASE("documented composition: base 1, two heads at 1, lam 0.2, gamma 0.8") {
    const int V = 16;
    LabelMatrix labels = labels_from_rows({
        {5, kIgnoreId},
        {6, kIgnoreId},
        {7, kIgnoreId},
    });
    LogitsTensor logits(2, 2, V);
    set_unit_ce_logits(logits, 0, 0, 5);
    set_unit_ce_logits(logits, 1, 0, 6);
    set_unit_ce_logits(logits, 2, 0, 7);
    const auto loss = compute_multihead_loss(logits, labels, 0.2, LossConfig{});
    CHECK(loss.base == doctest::Approx(1.0).epsilon(1e-12));
    REQUIRE(loss.per_head.size() == 2);
    CHECK(loss.per_head[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(loss.per_head[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(loss.total == doctest::Approx(1.288).epsilon(1e-12));
}

TEST_CASE("perfect one-hot logits drive the loss to zero") {
    const int V = 8;
    LabelMatrix labels = labels_from_rows({{5, 6}, {6, 7}});
    double prev = 1e18;
    for (double margin : {5.0, 20.0, 80.0}) {
        LogitsTensor logits(1, 2, V);
        for (std::size_t r = 0; r < 2; r++)
            for (std::size_t s = 0; s < 2; s++) {
                for (TokenId v = 0; v < V; v++) logits.at(r, s, v) = 0.0;
                logits.at(r, s, labels.at(r, s)) = margin;
            }
        const auto loss = compute_multihead_loss(logits, labels, 0.2, LossConfig{});
        CHECK(loss.total < prev);
        prev = loss.total;
    }
    CHECK(prev < 1e-8);
}

TEST_CASE("IGNORE and PAD positions never touch the loss") {
    const int V = 12;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    LabelMatrix labels = labels_from_rows({
        {5, 6, 7, 8},
        {6, kIgnoreId, 8, kPadId},
        {kIgnoreId, kIgnoreId, kPadId, kIgnoreId},
    });
    LogitsTensor logits(2, 4, V);
    for (std::size_t r = 0; r < 3; r++)
        for (std::size_t s = 0; s < 4; s++)
            for (TokenId v = 0; v < V; v++) logits.at(r, s, v) = u(rng);

    const auto before = compute_multihead_loss(logits, labels, 0.17, LossConfig{});
    for (std::size_t r = 0; r < 3; r++)
        for (std::size_t s = 0; s < 4; s++) {
            const TokenId label = labels.at(r, s);
            if (label != kIgnoreId && label != kPadId) continue;
            for (TokenId v = 0; v < V; v++) logits.at(r, s, v) = u(rng) * 10.0;
        }
    const auto after = compute_multihead_loss(logits, labels, 0.17, LossConfig{});
    CHECK(after.total == before.total);
    CHECK(after.base == before.base);
    CHECK(after.per_head == before.per_head);
}

TEST_CASE("shape mismatch is rejected") {
    LabelMatrix labels = labels_from_rows({{5, 6}, {6, 7}});
    LogitsTensor logits(2, 2, 8);  // two heads, labels carry one
    CHECK_THROWS_AS(compute_multihead_loss(logits, labels, 0.1, LossConfig{}),
                    std::invalid_argument);
}
