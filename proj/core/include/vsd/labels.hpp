// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vsd/vocab.hpp"

namespace vsd {

// (H+1) x S label grid. Row 0 is the base-model label; row i >= 1 is the
// label stream for head i. Stored row-major.
class LabelMatrix {
public:
    LabelMatrix() = default;
    LabelMatrix(int heads, std::size_t seq_len)
        : heads_(heads), seq_len_(seq_len), data_(static_cast<std::size_t>(heads + 1) * seq_len) {}

    int heads() const { return heads_; }
    std::size_t seq_len() const { return seq_len_; }
    std::size_t rows() const { return static_cast<std::size_t>(heads_) + 1; }

    TokenId& at(std::size_t row, std::size_t col) { return data_[row * seq_len_ + col]; }
    TokenId at(std::size_t row, std::size_t col) const { return data_[row * seq_len_ + col]; }
    TokenId* row(std::size_t r) { return data_.data() + r * seq_len_; }
    const TokenId* row(std::size_t r) const { return data_.data() + r * seq_len_; }

    bool operator==(const LabelMatrix& other) const = default;

    void save(const std::string& path) const;
    static LabelMatrix load(const std::string& path);
    std::string to_json_string() const;

private:
    int heads_ = 0;
    std::size_t seq_len_ = 0;
    TokenIds data_;
};

// Reference construction: left-shift row i by i, pad with [PAD], then walk
// every column and replace everything below its last [FRAG] with [IGNORE].
// A column with no [FRAG] keeps row 0 and masks all head rows. Explicit
// per-column loop; this is the oracle the bulk variant is checked against.
LabelMatrix build_labels_naive(const TokenIds& base_labels, int heads);

// Same output, computed with whole-row bulk operations only (shifted copies,
// elementwise compare/select, a running row-axis maximum). No per-column
// scalar logic.
LabelMatrix build_labels_parallel(const TokenIds& base_labels, int heads);

}  // namespace vsd
