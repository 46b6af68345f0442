// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <random>

#include "vsd/ngram.hpp"

using namespace vsd;

namespace {

constexpr TokenId A = 10, B = 11, C = 12;

TokenIds random_context(std::mt19937_64& rng, int vocab, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<TokenId> tok(0, vocab - 1);
    TokenIds ctx(len(rng));
    for (auto& t : ctx) t = tok(rng);
    return ctx;
}

}  // namespace

TEST_CASE("bigram counts on [a,b,a,b,a]") {
    const NGramMultiHead m = train_ngram({{A, B, A, B, A}}, 2, 1, 0.0, 32);

    const Dist after_a = m.distribution(TokenIds{A}, 0);
    CHECK(after_a[B] == doctest::Approx(1.0).epsilon(1e-12));  // a -> b twice, nothing else
    const Dist after_b = m.distribution(TokenIds{B}, 0);
    CHECK(after_b[A] == doctest::Approx(1.0).epsilon(1e-12));

    // offset 1 (head 1): a is followed-by-two by a, b by b
    const Dist skip_a = m.distribution(TokenIds{A}, 1);
    CHECK(skip_a[A] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("offsets with no samples anywhere give the uniform distribution") {
    // sequences of length 2 never produce offset-2 samples at any order
    const int V = 16;
    const NGramMultiHead m = train_ngram({{A, B}}, 2, 2, 1.0, V);
    const Dist d = m.distribution(TokenIds{A}, 2);
    for (double p : d) CHECK(p == doctest::Approx(1.0 / V).epsilon(1e-12));
}

TEST_CASE("unseen context backs off to shorter orders") {
    const NGramMultiHead m = train_ngram({{A, B, A, B, A}}, 3, 0, 0.5, 32);
    // context [C, C] was never seen at order 3 or 2; unigram carries mass
    const Dist d = m.distribution(TokenIds{C, C}, 0);
    double sum = 0.0;
    for (double p : d) {
        CHECK(p > 0.0);  // alpha > 0 leaves no zero-probability token
        sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    // the unigram of [a,b,a,b,a] prefers a over c
    CHECK(d[A] > d[C]);
}

TEST_CASE("retraining reproduces identical tables") {
    const std::vector<TokenIds> corpus = {{A, B, C, A}, {B, B, A}};
    const NGramMultiHead m1 = train_ngram(corpus, 3, 2, 0.1, 32);
    const NGramMultiHead m2 = train_ngram(corpus, 3, 2, 0.1, 32);
    CHECK(m1.table_hash() == m2.table_hash());
}

TEST_CASE("empty corpus is rejected") {
    CHECK_THROWS_AS(train_ngram({}, 2, 1, 0.1, 32), std::invalid_argument);
}

TEST_CASE("distributions sum to one") {
    std::mt19937_64 rng(3);
    const NGramMultiHead m = train_ngram({{A, B, C, A, B, C, C, A}}, 3, 3, 0.25, 24);
    for (int trial = 0; trial < 50; trial++) {
        const TokenIds ctx = random_context(rng, 24, 6);
        for (int d = 0; d <= 3; d++) {
            double sum = 0.0;
            for (double p : m.distribution(ctx, d)) sum += p;
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("verify equals repeated step (consistency law)") {
    std::mt19937_64 rng(11);
    NGramMultiHead m = train_ngram({{A, B, C, A, B, A, C, C, B, A}}, 3, 2, 0.3, 24);
    for (int trial = 0; trial < 100; trial++) {
        const TokenIds ctx = random_context(rng, 24, 5);
        TokenIds proposed = random_context(rng, 24, 4);
        if (proposed.empty()) proposed.push_back(A);

        const auto dists = m.verify(ctx, proposed);
        REQUIRE(dists.size() == proposed.size());
        TokenIds extended = ctx;
        for (std::size_t j = 0; j < proposed.size(); j++) {
            const StepOutput s = m.step(extended);
            REQUIRE(dists[j] == s.base);
            extended.push_back(proposed[j]);
        }
    }
}

TEST_CASE("tree_step matches per-position step outputs") {
    NGramMultiHead m = train_ngram({{A, B, C, A, B, A}}, 2, 2, 0.2, 24);
    const TokenIds ctx = {A, B};
    const std::vector<TokenIds> candidates = {{A, B, C}, {B, A, A}};
    const auto tree = m.tree_step(ctx, candidates);
    REQUIRE(tree.size() == 2);
    for (std::size_t c = 0; c < candidates.size(); c++) {
        TokenIds extended = ctx;
        for (std::size_t j = 0; j < candidates[c].size(); j++) {
            extended.push_back(candidates[c][j]);
            const StepOutput expect = m.step(extended);
            CHECK(tree[c][j].base == expect.base);
            CHECK(tree[c][j].heads == expect.heads);
        }
    }
}

TEST_CASE("latency knob slows calls down") {
    NGramMultiHead m = train_ngram({{A, B, A}}, 2, 1, 0.1, 16);
    m.set_latency_ms(10);
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 50; i++) m.step(TokenIds{A});
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(elapsed >= 0.5);
}

TEST_CASE("model persists through the binary dump") {
    const NGramMultiHead m = train_ngram({{A, B, C, A, B}}, 3, 2, 0.15, 48);
    const std::string path =
        (std::filesystem::temp_directory_path() / "vsd_ngram_test.bin").string();
    m.save(path, 0xabcdef);
    std::uint64_t vocab_hash = 0;
    const NGramMultiHead loaded = NGramMultiHead::load(path, &vocab_hash);
    CHECK(vocab_hash == 0xabcdef);
    CHECK(loaded.table_hash() == m.table_hash());
    CHECK(loaded.order() == 3);
    CHECK(loaded.num_heads() == 2);
    CHECK(loaded.alpha() == doctest::Approx(0.15));
    CHECK(loaded.distribution(TokenIds{A}, 0) == m.distribution(TokenIds{A}, 0));
    std::filesystem::remove(path);
}
