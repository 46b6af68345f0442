// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vsd {

using TokenId = std::int32_t;
using TokenIds = std::vector<TokenId>;

// Reserved ids. They are never produced by merging and never collide with
// content tokens: the 256 byte-fallback tokens start right after them.
inline constexpr TokenId kFragId = 0;
inline constexpr TokenId kPadId = 1;
inline constexpr TokenId kIgnoreId = 2;
inline constexpr TokenId kBosId = 3;
inline constexpr TokenId kEosId = 4;
inline constexpr TokenId kNumSpecial = 5;
inline constexpr TokenId kByteBase = kNumSpecial;

struct TokenSequence {
    TokenIds ids;
    // Per-id fragment index when produced by fragment-aware encoding;
    // empty otherwise.
    std::vector<std::int32_t> fragment_index;
};

// Byte-level BPE vocabulary: 5 specials, 256 byte tokens, then one token per
// merge. Every byte string is encodable via the byte alphabet.
class Vocab {
public:
    Vocab();

    int size() const { return static_cast<int>(table_.size()); }
    int merge_count() const { return static_cast<int>(merges_.size()); }
    std::span<const std::pair<TokenId, TokenId>> merges() const { return merges_; }

    static bool is_special(TokenId id) { return id >= 0 && id < kNumSpecial; }
    static TokenId byte_token(std::uint8_t b) { return kByteBase + b; }

    // "" for specials, the concatenated byte string otherwise.
    const std::string& token_bytes(TokenId id) const;
    bool valid_id(TokenId id) const { return id >= 0 && id < size(); }

    TokenId add_merge(TokenId left, TokenId right);

    std::string to_json_string() const;
    static Vocab from_json_string(std::string_view text);
    void save(const std::string& path) const;
    static Vocab load(const std::string& path);

    std::uint64_t hash() const;

private:
    std::vector<std::pair<TokenId, TokenId>> merges_;
    std::vector<std::string> table_;
};

}  // namespace vsd
