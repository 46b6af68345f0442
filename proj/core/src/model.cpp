// SPDX-License-Identifier: Apache-2.0

#include "vsd/model.hpp"

namespace vsd {

std::vector<std::vector<StepOutput>> SpeculativeModel::tree_step(
    std::span<const TokenId> context, const std::vector<TokenIds>& candidates) {
    std::vector<std::vector<StepOutput>> out;
    out.reserve(candidates.size());
    TokenIds extended(context.begin(), context.end());
    for (const TokenIds& path : candidates) {
        std::vector<StepOutput> per_position;
        per_position.reserve(path.size());
        extended.resize(context.size());
        for (TokenId token : path) {
            extended.push_back(token);
            per_position.push_back(step(extended));
        }
        out.push_back(std::move(per_position));
    }
    return out;
}

}  // namespace vsd
