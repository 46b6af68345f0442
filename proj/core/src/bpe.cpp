// SPDX-License-Identifier: Apache-2.0

#include "vsd/bpe.hpp"

#include <map>
#include <stdexcept>

namespace vsd {

namespace {

TokenIds to_byte_ids(std::string_view text) {
    TokenIds ids;
    ids.reserve(text.size());
    for (unsigned char c : text) ids.push_back(Vocab::byte_token(c));
    return ids;
}

// In-place left-to-right replacement of (left, right) with merged.
void apply_merge(TokenIds& seq, TokenId left, TokenId right, TokenId merged) {
    std::size_t w = 0;
    for (std::size_t r = 0; r < seq.size();) {
        if (r + 1 < seq.size() && seq[r] == left && seq[r + 1] == right) {
            seq[w++] = merged;
            r += 2;
        } else {
            seq[w++] = seq[r++];
        }
    }
    seq.resize(w);
}

}  // namespace

Vocab train_bpe(const std::vector<std::string>& corpus, int vocab_size) {
    if (corpus.empty()) throw std::invalid_argument("empty corpus");
    const int min_size = 256 + kNumSpecial;
    if (vocab_size < min_size)
        throw std::invalid_argument("vocab_size must be at least " + std::to_string(min_size));

    std::vector<TokenIds> seqs;
    seqs.reserve(corpus.size());
    for (const auto& text : corpus) seqs.push_back(to_byte_ids(text));

    Vocab vocab;
    int budget = vocab_size - min_size;
    while (budget-- > 0) {
        std::map<std::pair<TokenId, TokenId>, std::size_t> freq;
        for (const auto& seq : seqs)
            for (std::size_t i = 0; i + 1 < seq.size(); i++)
                freq[{seq[i], seq[i + 1]}]++;

        std::pair<TokenId, TokenId> best{};
        std::size_t best_count = 0;
        for (const auto& [pair, count] : freq) {
            if (count > best_count) {  // map order gives the smallest pair on ties
                best = pair;
                best_count = count;
            }
        }
        if (best_count < 2) break;

        const TokenId merged = vocab.add_merge(best.first, best.second);
        for (auto& seq : seqs) apply_merge(seq, best.first, best.second, merged);
    }
    return vocab;
}

TokenIds encode(std::string_view text, const Vocab& vocab) {
    TokenIds seq = to_byte_ids(text);
    TokenId id = 256 + kNumSpecial;
    for (const auto& [left, right] : vocab.merges()) {
        apply_merge(seq, left, right, id);
        id++;
    }
    return seq;
}

TokenSequence encode_fragmented(const FragmentedCode& code, const Vocab& vocab) {
    TokenSequence out;
    for (std::size_t f = 0; f < code.fragments.size(); f++) {
        const TokenIds ids = encode(code.fragments[f].text, vocab);
        for (TokenId id : ids) {
            out.ids.push_back(id);
            out.fragment_index.push_back(static_cast<std::int32_t>(f));
        }
        out.ids.push_back(kFragId);
        out.fragment_index.push_back(static_cast<std::int32_t>(f));
    }
    return out;
}

std::string decode(std::span<const TokenId> ids, const Vocab& vocab) {
    std::string out;
    for (TokenId id : ids) {
        if (!vocab.valid_id(id)) throw std::out_of_range("token id out of range");
        out += vocab.token_bytes(id);
    }
    return out;
}

}  // namespace vsd
