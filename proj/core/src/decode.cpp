// SPDX-License-Identifier: Apache-2.0

#include "vsd/decode.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace vsd {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void validate(const AcceptanceParams& p) {
    if (!(p.epsilon > 0.0 && p.epsilon <= 1.0)) throw std::invalid_argument("epsilon outside (0,1]");
    if (!(p.delta > 0.0 && p.delta <= 1.0)) throw std::invalid_argument("delta outside (0,1]");
    if (p.temperature < 0.0) throw std::invalid_argument("negative temperature");
    if (p.top_k_per_head.empty()) throw std::invalid_argument("top_k_per_head must be nonempty");
}

// Indices of the k largest probabilities; equal probabilities order by id.
TokenIds top_k(const Dist& dist, int k) {
    const int keep = std::min<int>(k, static_cast<int>(dist.size()));
    TokenIds order(dist.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + keep, order.end(),
                      [&dist](TokenId a, TokenId b) {
                          if (dist[a] != dist[b]) return dist[a] > dist[b];
                          return a < b;
                      });
    order.resize(static_cast<std::size_t>(keep));
    return order;
}

TokenId argmax(const Dist& dist) {
    return static_cast<TokenId>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

TokenId sample_tempered(const Dist& dist, double temperature, std::mt19937_64& rng) {
    if (temperature <= 0.0) return argmax(dist);
    std::vector<double> weights(dist.size());
    double total = 0.0;
    for (std::size_t i = 0; i < dist.size(); i++) {
        weights[i] = dist[i] > 0.0 ? std::pow(dist[i], 1.0 / temperature) : 0.0;
        total += weights[i];
    }
    if (total <= 0.0) return argmax(dist);
    std::uniform_real_distribution<double> uniform(0.0, total);
    const double draw = uniform(rng);
    double cumulative = 0.0;
    for (std::size_t i = 0; i < weights.size(); i++) {
        cumulative += weights[i];
        if (draw < cumulative) return static_cast<TokenId>(i);
    }
    return static_cast<TokenId>(weights.size() - 1);
}

// Longest verified prefix across candidates; judge(c, j) is the base
// distribution that scores candidates[c][j], defined for j >= 1.
AcceptDecision pick_longest_accepted(
    const std::vector<TokenIds>& candidates,
    const std::function<const Dist&(int, int)>& judge, const AcceptanceParams& params) {
    AcceptDecision best{0, 0};
    for (int c = 0; c < static_cast<int>(candidates.size()); c++) {
        const TokenIds& path = candidates[static_cast<std::size_t>(c)];
        int len = 1;  // the base proposal is the base model's own sample
        for (int j = 1; j < static_cast<int>(path.size()); j++) {
            if (!typical_accept(judge(c, j), path[static_cast<std::size_t>(j)], params)) break;
            len++;
        }
        if (len > best.accepted_len) best = {c, len};
    }
    return best;
}

long count_content_tokens(const TokenIds& ids) {
    return std::count_if(ids.begin(), ids.end(),
                         [](TokenId id) { return !Vocab::is_special(id); });
}

}  // namespace

double entropy(std::span<const double> dist) {
    double h = 0.0;
    for (double p : dist) {
        if (p > 0.0) h -= p * std::log(std::max(p, 1e-12));
    }
    return h;
}

bool typical_accept(std::span<const double> base_dist, TokenId token,
                    const AcceptanceParams& params) {
    if (token < 0 || static_cast<std::size_t>(token) >= base_dist.size())
        throw std::out_of_range("token id outside distribution");
    const double threshold =
        std::min(params.epsilon, params.delta * std::exp(-entropy(base_dist)));
    return base_dist[static_cast<std::size_t>(token)] > threshold;
}

std::vector<TokenIds> propose_candidates(const StepOutput& step_out,
                                         const AcceptanceParams& params,
                                         std::mt19937_64* rng) {
    validate(params);
    const int depth =
        1 + static_cast<int>(std::min(step_out.heads.size(), params.top_k_per_head.size() - 1));

    std::vector<TokenIds> ranked(static_cast<std::size_t>(depth));
    const int base_k = std::max(1, params.top_k_per_head[0]);
    if (params.temperature > 0.0 && rng != nullptr) {
        const TokenId sampled = sample_tempered(step_out.base, params.temperature, *rng);
        ranked[0].push_back(sampled);
        for (TokenId id : top_k(step_out.base, base_k)) {
            if (static_cast<int>(ranked[0].size()) >= base_k) break;
            if (id != sampled) ranked[0].push_back(id);
        }
    } else {
        ranked[0] = top_k(step_out.base, base_k);
    }
    for (int level = 1; level < depth; level++) {
        const int k = std::max(1, params.top_k_per_head[static_cast<std::size_t>(level)]);
        ranked[static_cast<std::size_t>(level)] =
            top_k(step_out.heads[static_cast<std::size_t>(level - 1)], k);
    }

    const int cap = std::max(1, params.max_candidates);
    std::vector<TokenIds> paths;
    std::vector<std::size_t> rank(static_cast<std::size_t>(depth), 0);
    while (static_cast<int>(paths.size()) < cap) {
        TokenIds path(static_cast<std::size_t>(depth));
        for (int d = 0; d < depth; d++)
            path[static_cast<std::size_t>(d)] = ranked[static_cast<std::size_t>(d)][rank[static_cast<std::size_t>(d)]];
        paths.push_back(std::move(path));
        int d = depth - 1;
        while (d >= 0) {
            auto& r = rank[static_cast<std::size_t>(d)];
            if (++r < ranked[static_cast<std::size_t>(d)].size()) break;
            r = 0;
            d--;
        }
        if (d < 0) break;
    }
    return paths;
}

AcceptDecision verify_and_accept(std::span<const TokenId> context,
                                 const std::vector<TokenIds>& candidates,
                                 SpeculativeModel& model, const AcceptanceParams& params) {
    if (candidates.empty()) throw std::invalid_argument("no candidates");
    std::vector<std::vector<Dist>> verified;
    verified.reserve(candidates.size());
    for (const TokenIds& path : candidates) verified.push_back(model.verify(context, path));
    return pick_longest_accepted(
        candidates,
        [&verified](int c, int j) -> const Dist& {
            return verified[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
        },
        params);
}

TokenIds truncate_to_fragment(std::span<const TokenId> accepted, FragmentTruncation mode,
                              TokenId frag) {
    if (accepted.empty()) throw std::invalid_argument("empty accepted prefix");
    if (mode == FragmentTruncation::None)
        return TokenIds(accepted.begin(), accepted.end());
    std::size_t last_frag = 0;
    for (std::size_t i = 1; i < accepted.size(); i++) {
        if (accepted[i] == frag) last_frag = i;
    }
    if (last_frag >= 1) return TokenIds(accepted.begin(), accepted.begin() + last_frag + 1);
    if (mode == FragmentTruncation::Lenient)
        return TokenIds(accepted.begin(), accepted.end());
    return TokenIds(accepted.begin(), accepted.begin() + 1);
}

DecodeResult decode(SpeculativeModel& model, std::span<const TokenId> prompt,
                    const AcceptanceParams& params, const StopCondition& stop,
                    std::uint64_t seed) {
    validate(params);
    std::mt19937_64 rng(seed);
    const auto t0 = Clock::now();

    DecodeResult result;
    DecodeTrace& trace = result.trace;
    TokenIds context(prompt.begin(), prompt.end());
    TokenIds& output = result.output.ids;

    long emitted_total = 0;
    bool eos_seen = false;
    if (stop.max_tokens > 0) {
        StepOutput current = model.step(context);
        trace.model_calls = 1;
        while (emitted_total < stop.max_tokens && !eos_seen) {
            const auto step_t0 = Clock::now();
            std::vector<TokenIds> candidates = propose_candidates(current, params, &rng);
            auto tree = model.tree_step(context, candidates);
            trace.model_calls++;
            const AcceptDecision decision = pick_longest_accepted(
                candidates,
                [&tree](int c, int j) -> const Dist& {
                    return tree[static_cast<std::size_t>(c)][static_cast<std::size_t>(j - 1)].base;
                },
                params);

            const TokenIds& winner = candidates[static_cast<std::size_t>(decision.winner)];
            const std::span<const TokenId> accepted(winner.data(),
                                                    static_cast<std::size_t>(decision.accepted_len));
            TokenIds emitted = truncate_to_fragment(accepted, params.truncation);

            for (TokenId token : emitted) {
                context.push_back(token);
                output.push_back(token);
                if (token == stop.eos) eos_seen = true;
            }
            emitted_total += static_cast<long>(emitted.size());
            current = std::move(tree[static_cast<std::size_t>(decision.winner)]
                                    [emitted.size() - 1]);

            DecodeStep record;
            record.proposed = std::move(candidates);
            record.accepted_len = decision.accepted_len;
            record.emitted = std::move(emitted);
            record.candidate_index = decision.winner;
            record.ms = ms_since(step_t0);
            trace.steps.push_back(std::move(record));
        }
    }
    trace.wall_time = ms_since(t0) / 1000.0;
    trace.total_tokens = count_content_tokens(output);
    return result;
}

DecodeResult ntp_decode(SpeculativeModel& model, std::span<const TokenId> prompt,
                        double temperature, const StopCondition& stop, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto t0 = Clock::now();

    DecodeResult result;
    DecodeTrace& trace = result.trace;
    TokenIds context(prompt.begin(), prompt.end());
    TokenIds& output = result.output.ids;

    for (int emitted = 0; emitted < stop.max_tokens; emitted++) {
        const auto step_t0 = Clock::now();
        const StepOutput current = model.step(context);
        trace.model_calls++;
        const TokenId token = sample_tempered(current.base, temperature, rng);
        context.push_back(token);
        output.push_back(token);

        DecodeStep record;
        record.proposed = {{token}};
        record.accepted_len = 1;
        record.emitted = {token};
        record.candidate_index = 0;
        record.ms = ms_since(step_t0);
        trace.steps.push_back(std::move(record));
        if (token == stop.eos) break;
    }
    trace.wall_time = ms_since(t0) / 1000.0;
    trace.total_tokens = count_content_tokens(output);
    return result;
}

void write_trace_jsonl(const DecodeTrace& trace, std::ostream& out) {
    for (std::size_t i = 0; i < trace.steps.size(); i++) {
        const DecodeStep& step = trace.steps[i];
        nlohmann::ordered_json j;
        j["step"] = i;
        j["proposed"] = step.proposed;
        j["candidate"] = step.candidate_index;
        j["accepted_len"] = step.accepted_len;
        j["emitted"] = step.emitted;
        j["ms"] = step.ms;
        out << j.dump() << "\n";
    }
}

DecodeTrace read_trace_jsonl(std::istream& in) {
    DecodeTrace trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        DecodeStep step;
        step.proposed = j.at("proposed").get<std::vector<TokenIds>>();
        step.candidate_index = j.at("candidate").get<int>();
        step.accepted_len = j.at("accepted_len").get<int>();
        step.emitted = j.at("emitted").get<TokenIds>();
        step.ms = j.value("ms", 0.0);
        trace.total_tokens +=
            std::count_if(step.emitted.begin(), step.emitted.end(),
                          [](TokenId id) { return !Vocab::is_special(id); });
        trace.steps.push_back(std::move(step));
    }
    return trace;
}

}  // namespace vsd
