// SPDX-License-Identifier: Apache-2.0

#include "vsd/loss.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vsd {

double lambda_schedule(double progress, const LossConfig& cfg) {
    const double p = std::clamp(progress, 0.0, 1.0);
    return cfg.lambda_max * std::sin(std::numbers::pi * p / 2.0);
}

MultiHeadLoss compute_multihead_loss(const LogitsTensor& logits, const LabelMatrix& labels,
                                     double lambda, const LossConfig& cfg) {
    if (logits.heads() != labels.heads() || logits.seq_len() != labels.seq_len())
        throw std::invalid_argument("logits/labels shape mismatch");

    const int vocab = logits.vocab();
    const std::size_t seq = labels.seq_len();

    auto row_loss = [&](std::size_t row) {
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t s = 0; s < seq; s++) {
            const TokenId label = labels.at(row, s);
            if (label == kIgnoreId || label == kPadId) continue;
            if (label < 0 || label >= vocab)
                throw std::invalid_argument("label id outside logits vocabulary");
            double max_logit = logits.at(row, s, 0);
            for (TokenId v = 1; v < vocab; v++) max_logit = std::max(max_logit, logits.at(row, s, v));
            double norm = 0.0;
            for (TokenId v = 0; v < vocab; v++) norm += std::exp(logits.at(row, s, v) - max_logit);
            const double logp = logits.at(row, s, label) - max_logit - std::log(norm);
            sum += -logp;
            count++;
        }
        return count == 0 ? 0.0 : sum / static_cast<double>(count);
    };

    MultiHeadLoss out;
    out.base = row_loss(0);
    double weighted = 0.0;
    double decay = 1.0;
    for (int i = 1; i <= labels.heads(); i++) {
        decay *= cfg.gamma;
        const double head = row_loss(static_cast<std::size_t>(i));
        out.per_head.push_back(head);
        weighted += head * decay;
    }
    out.total = out.base + lambda * weighted;
    return out;
}

}  // namespace vsd
