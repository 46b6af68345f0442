// SPDX-License-Identifier: Apache-2.0

#include "vsd/metrics.hpp"

#include <stdexcept>

namespace vsd {

double speed(const std::vector<RunRecord>& runs) {
    if (runs.empty()) throw std::invalid_argument("no runs");
    double sum = 0.0;
    for (const RunRecord& run : runs) {
        if (run.trace.wall_time <= 0.0) throw std::invalid_argument("non-positive inference time");
        sum += static_cast<double>(run.trace.total_tokens) / run.trace.wall_time;
    }
    return sum / static_cast<double>(runs.size());
}

double speedup(double method_speed, double ntp_speed) {
    if (ntp_speed <= 0.0) throw std::invalid_argument("non-positive baseline speed");
    return method_speed / ntp_speed;
}

double pass_at_k(int n, int c, int k) {
    if (c < 0 || c > n) throw std::invalid_argument("c outside [0, n]");
    if (k < 1 || k > n) throw std::invalid_argument("k outside [1, n]");
    if (n - c < k) return 1.0;
    double fail_all = 1.0;
    for (int i = 1; i <= k; i++)
        fail_all *= 1.0 - static_cast<double>(c) / static_cast<double>(n - k + i);
    return 1.0 - fail_all;
}

double pass_rate(int passed, int benchmark_size) {
    if (benchmark_size < 1) throw std::invalid_argument("empty benchmark");
    if (passed < 0 || passed > benchmark_size) throw std::invalid_argument("bad pass count");
    return static_cast<double>(passed) / static_cast<double>(benchmark_size);
}

double mean_accepted_length(const DecodeTrace& trace) {
    if (trace.steps.empty()) throw std::invalid_argument("empty trace");
    std::size_t emitted = 0;
    for (const DecodeStep& step : trace.steps) emitted += step.emitted.size();
    return static_cast<double>(emitted) / static_cast<double>(trace.steps.size());
}

}  // namespace vsd
