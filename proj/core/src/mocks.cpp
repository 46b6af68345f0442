// SPDX-License-Identifier: Apache-2.0

#include "vsd/mocks.hpp"

#include <chrono>
#include <stdexcept>
#include <thread>

namespace vsd {

namespace {

void sleep_ms(int ms) {
    if (ms > 0) std::this_thread::sleep_for(std::chrono::milliseconds(ms));
}

}  // namespace

StepOutput ScriptedMock::step(std::span<const TokenId>) {
    sleep_ms(latency_ms_);
    if (step_script_.empty()) throw std::runtime_error("scripted mock: step script exhausted");
    StepOutput out = std::move(step_script_.front());
    step_script_.pop_front();
    return out;
}

std::vector<Dist> ScriptedMock::verify(std::span<const TokenId>, std::span<const TokenId>) {
    sleep_ms(latency_ms_);
    if (verify_script_.empty())
        throw std::runtime_error("scripted mock: verify script exhausted");
    std::vector<Dist> out = std::move(verify_script_.front());
    verify_script_.pop_front();
    return out;
}

Dist OracleModel::one_hot(std::size_t position) const {
    Dist dist(static_cast<std::size_t>(vocab_size_), 0.0);
    const TokenId token = position < target_.size() ? target_[position] : kEosId;
    dist[static_cast<std::size_t>(token)] = 1.0;
    return dist;
}

std::size_t OracleModel::position_of(std::span<const TokenId> context) {
    if (!anchor_) anchor_ = context.size();
    return context.size() - *anchor_;
}

void OracleModel::sleep_latency() const { sleep_ms(latency_ms_); }

StepOutput OracleModel::step(std::span<const TokenId> context) {
    sleep_latency();
    const std::size_t pos = position_of(context);
    StepOutput out;
    out.base = one_hot(pos);
    for (int i = 1; i <= heads_; i++) out.heads.push_back(one_hot(pos + static_cast<std::size_t>(i)));
    return out;
}

std::vector<Dist> OracleModel::verify(std::span<const TokenId> context,
                                      std::span<const TokenId> proposed) {
    sleep_latency();
    const std::size_t pos = position_of(context);
    std::vector<Dist> out;
    out.reserve(proposed.size());
    for (std::size_t j = 0; j < proposed.size(); j++) out.push_back(one_hot(pos + j));
    return out;
}

std::vector<std::vector<StepOutput>> OracleModel::tree_step(
    std::span<const TokenId> context, const std::vector<TokenIds>& candidates) {
    sleep_latency();
    const std::size_t pos = position_of(context);
    std::vector<std::vector<StepOutput>> out;
    out.reserve(candidates.size());
    for (const TokenIds& path : candidates) {
        std::vector<StepOutput> per_position;
        per_position.reserve(path.size());
        for (std::size_t m = 0; m < path.size(); m++) {
            StepOutput node;
            node.base = one_hot(pos + m + 1);
            for (int i = 1; i <= heads_; i++)
                node.heads.push_back(one_hot(pos + m + 1 + static_cast<std::size_t>(i)));
            per_position.push_back(std::move(node));
        }
        out.push_back(std::move(per_position));
    }
    return out;
}

std::unique_ptr<SpeculativeModel> oracle_mock(TokenIds target, int heads, int vocab_size,
                                              int latency_ms) {
    return std::make_unique<OracleModel>(std::move(target), heads, vocab_size, latency_ms);
}

}  // namespace vsd
