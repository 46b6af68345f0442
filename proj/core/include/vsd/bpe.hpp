// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsd/syntax.hpp"
#include "vsd/vocab.hpp"

namespace vsd {

// Trains byte-level BPE. vocab_size counts specials + 256 byte tokens +
// merges; the merge budget is vocab_size - 256 - kNumSpecial. Deterministic:
// frequency ties break toward the lexicographically smallest (left, right)
// id pair, and training stops early once no adjacent pair repeats.
Vocab train_bpe(const std::vector<std::string>& corpus, int vocab_size);

// Greedy application of the merge list in training order.
TokenIds encode(std::string_view text, const Vocab& vocab);

// Encodes each fragment independently (no merge spans a boundary) and
// appends one [FRAG] id after every fragment.
TokenSequence encode_fragmented(const FragmentedCode& code, const Vocab& vocab);

// Concatenates token byte strings; special ids decode to "".
std::string decode(std::span<const TokenId> ids, const Vocab& vocab);

}  // namespace vsd
