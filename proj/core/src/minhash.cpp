// SPDX-License-Identifier: Apache-2.0

#include "vsd/minhash.hpp"

#include <limits>
#include <stdexcept>

namespace vsd {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

namespace {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

MinHashSignature minhash(std::string_view text, int shingle_k, int num_hashes,
                         std::uint64_t seed) {
    if (shingle_k < 1) throw std::invalid_argument("shingle size must be >= 1");
    if (num_hashes < 1) throw std::invalid_argument("need at least one hash");

    MinHashSignature sig;
    sig.shingle_k = shingle_k;
    sig.seed = seed;
    sig.values.assign(static_cast<std::size_t>(num_hashes),
                      std::numeric_limits<std::uint64_t>::max());

    std::vector<std::uint64_t> slot_seeds(static_cast<std::size_t>(num_hashes));
    std::uint64_t state = seed;
    for (auto& s : slot_seeds) {
        state = splitmix64(state);
        s = state;
    }

    auto absorb = [&](std::string_view shingle) {
        const std::uint64_t base = fnv1a64(shingle);
        for (std::size_t i = 0; i < sig.values.size(); i++) {
            const std::uint64_t h = splitmix64(base ^ slot_seeds[i]);
            if (h < sig.values[i]) sig.values[i] = h;
        }
    };

    const std::size_t k = static_cast<std::size_t>(shingle_k);
    if (text.empty()) return sig;
    if (text.size() < k) {
        absorb(text);
        return sig;
    }
    for (std::size_t i = 0; i + k <= text.size(); i++) absorb(text.substr(i, k));
    return sig;
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.values.size() != b.values.size() || a.values.empty())
        throw std::invalid_argument("incompatible signatures");
    std::size_t matches = 0;
    for (std::size_t i = 0; i < a.values.size(); i++)
        if (a.values[i] == b.values[i]) matches++;
    return static_cast<double>(matches) / static_cast<double>(a.values.size());
}

}  // namespace vsd
