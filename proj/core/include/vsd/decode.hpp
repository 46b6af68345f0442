// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include "vsd/model.hpp"
#include "vsd/vocab.hpp"

namespace vsd {

enum class FragmentTruncation {
    Strict,   // no [FRAG] in the tail: keep only the base token
    Lenient,  // no [FRAG] in the tail: keep the whole accepted prefix
    None,     // never truncate (plain multi-head decoding)
};

struct AcceptanceParams {
    double epsilon = 0.3;
    double delta = 0.6;
    double temperature = 0.0;
    // top_k_per_head[0] is the base budget, entry i+1 the budget of head i;
    // its length caps how many heads contribute to a candidate path.
    std::vector<int> top_k_per_head = {1};
    int max_candidates = 32;
    FragmentTruncation truncation = FragmentTruncation::Strict;
};

struct StopCondition {
    int max_tokens = 256;  // bound on emitted tokens, [FRAG] included
    TokenId eos = kEosId;
};

struct DecodeStep {
    std::vector<TokenIds> proposed;
    int accepted_len = 0;
    TokenIds emitted;
    int candidate_index = 0;
    double ms = 0.0;
};

struct DecodeTrace {
    std::vector<DecodeStep> steps;
    long total_tokens = 0;  // content tokens in the final output, specials excluded
    double wall_time = 0.0;
    long model_calls = 0;
};

struct DecodeResult {
    TokenSequence output;
    DecodeTrace trace;
};

// Shannon entropy in nats; 0 * log 0 := 0, probabilities clamped at 1e-12
// before the log.
double entropy(std::span<const double> dist);

// Typical acceptance: true iff
// dist[token] > min(epsilon, delta * exp(-entropy(dist))).
bool typical_accept(std::span<const double> base_dist, TokenId token,
                    const AcceptanceParams& params);

// Candidate paths over a fixed rank tree: the Cartesian product of per-level
// ranks in rank-lexicographic order, capped at max_candidates. At
// temperature 0 the base level is its top-k; otherwise the first base choice
// is sampled from the tempered base distribution and the remaining base
// slots fall back to probability order.
std::vector<TokenIds> propose_candidates(const StepOutput& step_out,
                                         const AcceptanceParams& params,
                                         std::mt19937_64* rng = nullptr);

struct AcceptDecision {
    int winner = 0;
    int accepted_len = 0;
};

// Verifies every candidate against the model and picks the longest accepted
// prefix. The leading base token is always accepted; head tokens must pass
// typical acceptance against the verify distributions, in order. Ties break
// toward the lowest candidate index.
AcceptDecision verify_and_accept(std::span<const TokenId> context,
                                 const std::vector<TokenIds>& candidates,
                                 SpeculativeModel& model, const AcceptanceParams& params);

// Fragment-integrity cut: keep the prefix through the last [FRAG] at
// position >= 1, else (Strict) just the first token / (Lenient, None) per
// the mode above.
TokenIds truncate_to_fragment(std::span<const TokenId> accepted,
                              FragmentTruncation mode = FragmentTruncation::Strict,
                              TokenId frag = kFragId);

// Speculative decode loop: propose from the current distributions, run one
// fused tree_step, accept the longest verified prefix, cut it at a fragment
// boundary, emit, and reuse the tree distributions at the emitted tip for
// the next round. One model call per step plus one priming call.
DecodeResult decode(SpeculativeModel& model, std::span<const TokenId> prompt,
                    const AcceptanceParams& params, const StopCondition& stop,
                    std::uint64_t seed = 0);

// Conventional next-token prediction: one model call and one emitted token
// per step. Argmax at temperature 0, seeded tempered sampling otherwise.
DecodeResult ntp_decode(SpeculativeModel& model, std::span<const TokenId> prompt,
                        double temperature, const StopCondition& stop,
                        std::uint64_t seed = 0);

void write_trace_jsonl(const DecodeTrace& trace, std::ostream& out);
DecodeTrace read_trace_jsonl(std::istream& in);

}  // namespace vsd
