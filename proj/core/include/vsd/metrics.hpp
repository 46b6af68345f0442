// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vsd/decode.hpp"

namespace vsd {

struct RunRecord {
    std::string prompt_id;
    std::string method;  // "ours" | "medusa" | "ntp"
    std::string output_text;
    DecodeTrace trace;
    bool syntax_ok = false;
    std::optional<bool> functional_ok;
    std::string functional_reason;  // set when the external checker fails
};

// Mean over runs of output-token-length / inference-time, in tokens per
// second. Throws on an empty run list.
double speed(const std::vector<RunRecord>& runs);

double speedup(double method_speed, double ntp_speed);

// Unbiased estimator 1 - C(n-c, k) / C(n, k) via the telescoping product
// prod_i (1 - c / (n - k + i)); safe for large n.
double pass_at_k(int n, int c, int k);

double pass_rate(int passed, int benchmark_size);

// Emitted tokens per decode step, [FRAG] included. Throws on empty traces.
double mean_accepted_length(const DecodeTrace& trace);

}  // namespace vsd
