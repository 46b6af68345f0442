// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "vsd/labels.hpp"

namespace vsd {

struct LossConfig {
    double lambda_max = 0.2;
    double gamma = 0.8;
    int heads = 10;
};

// Head-loss weight over training progress p in [0, 1]:
// lambda(p) = lambda_max * sin(pi * p / 2). Monotone, 0 at start,
// lambda_max at the end.
double lambda_schedule(double progress, const LossConfig& cfg);

// Dense (H+1) x S x V logit block, row-major.
class LogitsTensor {
public:
    LogitsTensor() = default;
    LogitsTensor(int heads, std::size_t seq_len, int vocab)
        : heads_(heads),
          seq_len_(seq_len),
          vocab_(vocab),
          data_(static_cast<std::size_t>(heads + 1) * seq_len * static_cast<std::size_t>(vocab)) {}

    int heads() const { return heads_; }
    std::size_t seq_len() const { return seq_len_; }
    int vocab() const { return vocab_; }

    double& at(std::size_t row, std::size_t pos, TokenId v) {
        return data_[(row * seq_len_ + pos) * static_cast<std::size_t>(vocab_) +
                     static_cast<std::size_t>(v)];
    }
    double at(std::size_t row, std::size_t pos, TokenId v) const {
        return data_[(row * seq_len_ + pos) * static_cast<std::size_t>(vocab_) +
                     static_cast<std::size_t>(v)];
    }

private:
    int heads_ = 0;
    std::size_t seq_len_ = 0;
    int vocab_ = 0;
    std::vector<double> data_;
};

struct MultiHeadLoss {
    double total = 0.0;
    double base = 0.0;
    std::vector<double> per_head;  // heads 1..H
};

// Per-row mean cross-entropy over positions whose label is neither [IGNORE]
// nor [PAD] (0 when a row has no such position), combined as
// total = base + lambda * sum_i per_head[i] * gamma^i.
MultiHeadLoss compute_multihead_loss(const LogitsTensor& logits, const LabelMatrix& labels,
                                     double lambda, const LossConfig& cfg);

}  // namespace vsd
