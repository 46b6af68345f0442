// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <memory>
#include <optional>

#include "vsd/model.hpp"

namespace vsd {

// Replays pre-scripted step and verify responses; throws once a script is
// exhausted. Stateful cursor, single decode only.
class ScriptedMock : public SpeculativeModel {
public:
    ScriptedMock(int vocab_size, int heads) : vocab_size_(vocab_size), heads_(heads) {}

    void push_step(StepOutput out) { step_script_.push_back(std::move(out)); }
    void push_verify(std::vector<Dist> dists) { verify_script_.push_back(std::move(dists)); }
    void set_latency_ms(int ms) { latency_ms_ = ms; }

    int vocab_size() const override { return vocab_size_; }
    int num_heads() const override { return heads_; }

    StepOutput step(std::span<const TokenId> context) override;
    std::vector<Dist> verify(std::span<const TokenId> context,
                             std::span<const TokenId> proposed) override;

    std::unique_ptr<SpeculativeModel> clone() const override {
        return std::make_unique<ScriptedMock>(*this);
    }

private:
    int vocab_size_;
    int heads_;
    int latency_ms_ = 0;
    std::deque<StepOutput> step_script_;
    std::deque<std::vector<Dist>> verify_script_;
};

// Deterministic ground-truth replayer: base and heads emit the next tokens
// of a fixed target as one-hot distributions, [EOS] past the end. Position
// is the context growth since the first call.
class OracleModel : public SpeculativeModel {
public:
    OracleModel(TokenIds target, int heads, int vocab_size, int latency_ms = 0)
        : target_(std::move(target)),
          heads_(heads),
          vocab_size_(vocab_size),
          latency_ms_(latency_ms) {}

    int vocab_size() const override { return vocab_size_; }
    int num_heads() const override { return heads_; }

    StepOutput step(std::span<const TokenId> context) override;
    std::vector<Dist> verify(std::span<const TokenId> context,
                             std::span<const TokenId> proposed) override;
    std::vector<std::vector<StepOutput>> tree_step(
        std::span<const TokenId> context, const std::vector<TokenIds>& candidates) override;

    std::unique_ptr<SpeculativeModel> clone() const override {
        return std::make_unique<OracleModel>(*this);
    }

private:
    Dist one_hot(std::size_t position) const;
    std::size_t position_of(std::span<const TokenId> context);
    void sleep_latency() const;

    TokenIds target_;
    int heads_;
    int vocab_size_;
    int latency_ms_;
    std::optional<std::size_t> anchor_;
};

std::unique_ptr<SpeculativeModel> oracle_mock(TokenIds target, int heads, int vocab_size,
                                              int latency_ms = 0);

}  // namespace vsd
