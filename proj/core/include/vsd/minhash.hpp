// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace vsd {

struct MinHashSignature {
    std::vector<std::uint64_t> values;  // one minimum per seeded permutation
    int shingle_k = 8;
    std::uint64_t seed = 0;
};

// k-byte shingles hashed under num_hashes seeded permutations, keeping the
// per-slot minimum. Texts shorter than k contribute themselves as the single
// shingle; the empty text yields an all-max signature.
MinHashSignature minhash(std::string_view text, int shingle_k, int num_hashes,
                         std::uint64_t seed);

// Fraction of matching slots; estimates Jaccard similarity of shingle sets.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace vsd
