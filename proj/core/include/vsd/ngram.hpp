// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vsd/model.hpp"

namespace vsd {

// Multi-offset n-gram model: the table for offset d maps each (n-1)-token
// context to the frequencies of the token d+1 positions past the context
// end, so offset 0 backs the base head and offset i backs decoding head i.
// Lookup backs off through shorter contexts down to the unigram table and
// falls back to uniform when no order has mass; additive alpha smoothing is
// applied at the first order with data.
class NGramMultiHead : public SpeculativeModel {
public:
    NGramMultiHead(int order, int heads, double alpha, int vocab_size);

    int vocab_size() const override { return vocab_size_; }
    int num_heads() const override { return heads_; }
    int order() const { return order_; }
    double alpha() const { return alpha_; }

    void set_latency_ms(int ms) { latency_ms_ = ms; }
    int latency_ms() const { return latency_ms_; }

    StepOutput step(std::span<const TokenId> context) override;
    std::vector<Dist> verify(std::span<const TokenId> context,
                             std::span<const TokenId> proposed) override;
    std::vector<std::vector<StepOutput>> tree_step(
        std::span<const TokenId> context, const std::vector<TokenIds>& candidates) override;

    bool shareable_across_decodes() const override { return true; }
    std::unique_ptr<SpeculativeModel> clone() const override;

    Dist distribution(std::span<const TokenId> context, int offset) const;

    void save(const std::string& path, std::uint64_t vocab_hash) const;
    static NGramMultiHead load(const std::string& path, std::uint64_t* vocab_hash = nullptr);
    std::uint64_t table_hash() const;

private:
    friend NGramMultiHead train_ngram(const std::vector<TokenIds>&, int, int, double, int);

    void count(std::span<const TokenId> sequence);
    void sleep_latency() const;

    using Counts = std::map<TokenIds, std::map<TokenId, std::uint32_t>>;

    int order_;
    int heads_;
    double alpha_;
    int vocab_size_;
    int latency_ms_ = 0;
    // tables_[offset][order-1]: context of (order-1) tokens -> frequencies
    std::vector<std::vector<Counts>> tables_;
};

// Counts every (context, target) pair of each sequence for offsets 0..heads
// and all orders 1..n. Deterministic.
NGramMultiHead train_ngram(const std::vector<TokenIds>& corpus, int order, int heads,
                           double alpha, int vocab_size);

}  // namespace vsd
