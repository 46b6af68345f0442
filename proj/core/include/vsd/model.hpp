// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "vsd/vocab.hpp"

namespace vsd {

using Dist = std::vector<double>;

struct StepOutput {
    Dist base;
    std::vector<Dist> heads;  // heads[i] predicts the token i+2 positions ahead
};

// Anything that can propose base+head distributions and verify a proposed
// continuation. Distributions sum to 1 (1e-6), and the consistency law
// verify(ctx, p)[j] == step(ctx ++ p[..j]).base must hold.
class SpeculativeModel {
public:
    virtual ~SpeculativeModel() = default;

    virtual int vocab_size() const = 0;
    virtual int num_heads() const = 0;

    virtual StepOutput step(std::span<const TokenId> context) = 0;

    // Base distribution at every proposed position, conditioned on the
    // context plus the preceding proposed tokens.
    virtual std::vector<Dist> verify(std::span<const TokenId> context,
                                     std::span<const TokenId> proposed) = 0;

    // One fused forward over a batch of candidate paths: result[c][m] holds
    // base and head distributions conditioned on context ++ candidates[c][0..m].
    // This is what the decode loop charges as a single model call, so
    // implementations with an artificial latency knob sleep once per
    // tree_step rather than once per covered position. The default builds
    // the result from repeated step() calls.
    virtual std::vector<std::vector<StepOutput>> tree_step(
        std::span<const TokenId> context, const std::vector<TokenIds>& candidates);

    // Whether one instance may serve several concurrent decode loops.
    virtual bool shareable_across_decodes() const { return false; }

    virtual std::unique_ptr<SpeculativeModel> clone() const = 0;
};

}  // namespace vsd
