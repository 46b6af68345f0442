// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vsd/metrics.hpp"
#include "vsd/model.hpp"
#include "vsd/vocab.hpp"

namespace vsd {

struct BenchPrompt {
    std::string id;
    std::string instruction;  // Verilog prefix handed to the model
    std::optional<std::string> testbench;
};

std::vector<BenchPrompt> read_prompts(std::istream& in);

// Shell command template for functional checking; {design} expands to a
// temp file holding the generated code, {testbench} to the prompt's
// testbench path. Nonzero exit or timeout means fail.
struct ExternalChecker {
    std::string command_template;
    double timeout_s = 30.0;
};

enum class TimeSource {
    Wall,        // measured wall clock
    ModelCalls,  // model calls as the time unit; deterministic across reruns
};

struct BenchParams {
    AcceptanceParams accept;
    int samples_per_prompt = 20;
    std::vector<int> pass_ks = {1, 5, 10};
    int max_tokens = 256;
    std::uint64_t seed = 1;
    int workers = 1;
    TimeSource time_source = TimeSource::Wall;
    std::optional<ExternalChecker> checker;
};

struct MethodMetrics {
    double speed = 0.0;
    std::optional<double> speedup_vs_ntp;
    double mean_accepted_len = 0.0;
    std::map<int, double> pass_at;
    double pass_rate = 0.0;
};

struct MetricReport {
    std::vector<std::string> method_order;
    std::map<std::string, MethodMetrics> methods;
    std::string config_echo;
    std::vector<RunRecord> runs;

    std::string to_json_string() const;
    std::string to_csv_string() const;
};

// Runs every method x prompt x sample job (concurrently up to `workers`),
// syntax-checks each output, optionally invokes the external checker, and
// aggregates all metrics with a deterministic reduce over job order.
// Methods: "ours" (fragment-truncated speculative decode), "medusa"
// (untruncated speculative decode), "ntp".
MetricReport run_benchmark(SpeculativeModel& model, const Vocab& vocab,
                           const std::vector<BenchPrompt>& prompts,
                           const std::vector<std::string>& methods, const BenchParams& params);

// Exposed for the CLI and tests: prompt text to model-ready token ids
// ([BOS] + fragment-encoded text when it lexes, byte encoding otherwise).
TokenIds encode_prompt(const std::string& text, const Vocab& vocab);

}  // namespace vsd
