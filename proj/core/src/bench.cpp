// SPDX-License-Identifier: Apache-2.0

#include "vsd/bench.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include "vsd/bpe.hpp"
#include "vsd/minhash.hpp"
#include "vsd/parser.hpp"
#include "vsd/syntax.hpp"

namespace vsd {

std::vector<BenchPrompt> read_prompts(std::istream& in) {
    std::vector<BenchPrompt> prompts;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        BenchPrompt p;
        p.id = j.at("id").get<std::string>();
        p.instruction = j.at("instruction").get<std::string>();
        if (j.contains("testbench")) p.testbench = j.at("testbench").get<std::string>();
        prompts.push_back(std::move(p));
    }
    return prompts;
}

TokenIds encode_prompt(const std::string& text, const Vocab& vocab) {
    TokenIds ids{kBosId};
    try {
        const FragmentedCode fc = segment(text, default_significant_set());
        const TokenSequence seq = encode_fragmented(fc, vocab);
        ids.insert(ids.end(), seq.ids.begin(), seq.ids.end());
    } catch (const LexError&) {
        const TokenIds plain = encode(text, vocab);
        ids.insert(ids.end(), plain.begin(), plain.end());
    }
    return ids;
}

namespace {

struct CheckerOutcome {
    bool ok = false;
    std::string reason;
};

std::string substitute(std::string tmpl, const std::string& key, const std::string& value) {
    std::size_t pos;
    while ((pos = tmpl.find(key)) != std::string::npos) tmpl.replace(pos, key.size(), value);
    return tmpl;
}

// Run a shell command with a kill-on-timeout guard.
CheckerOutcome run_checked_command(const std::string& command, double timeout_s) {
    const pid_t pid = fork();
    if (pid < 0) return {false, "fork failed"};
    if (pid == 0) {
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    const auto deadline =
        std::chrono::steady_clock::now() + std::chrono::duration<double>(timeout_s);
    while (true) {
        int status = 0;
        const pid_t done = waitpid(pid, &status, WNOHANG);
        if (done == pid) {
            if (WIFEXITED(status) && WEXITSTATUS(status) == 0) return {true, ""};
            if (WIFEXITED(status) && WEXITSTATUS(status) == 127)
                return {false, "command not found"};
            return {false, "checker exited with nonzero status"};
        }
        if (std::chrono::steady_clock::now() >= deadline) {
            kill(pid, SIGKILL);
            waitpid(pid, &status, 0);
            return {false, "checker timed out"};
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }
}

CheckerOutcome run_external_checker(const ExternalChecker& checker, const std::string& design,
                                    const std::string& testbench, std::size_t job) {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string design_path =
        (dir / ("vsd-bench-" + std::to_string(getpid()) + "-" + std::to_string(job) + ".v"))
            .string();
    {
        std::ofstream out(design_path, std::ios::binary);
        out << design;
    }
    std::string command = substitute(checker.command_template, "{design}", design_path);
    command = substitute(command, "{testbench}", testbench);
    const CheckerOutcome outcome = run_checked_command(command, checker.timeout_s);
    std::filesystem::remove(design_path);
    return outcome;
}

struct Job {
    std::size_t method_idx;
    std::size_t prompt_idx;
    int sample;
};

void run_jobs(std::size_t count, int workers, const std::function<void(std::size_t)>& body) {
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; i++) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n = std::min<int>(workers, static_cast<int>(count));
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; t++) {
        pool.emplace_back([&]() {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

double run_time(const RunRecord& run, TimeSource source) {
    return source == TimeSource::Wall ? run.trace.wall_time
                                      : static_cast<double>(run.trace.model_calls);
}

bool run_passed(const RunRecord& run, bool has_checker) {
    if (has_checker && run.functional_ok.has_value()) return *run.functional_ok;
    return run.syntax_ok;
}

}  // namespace

MetricReport run_benchmark(SpeculativeModel& model, const Vocab& vocab,
                           const std::vector<BenchPrompt>& prompts,
                           const std::vector<std::string>& methods, const BenchParams& params) {
    if (prompts.empty()) throw std::invalid_argument("no prompts");
    if (methods.empty()) throw std::invalid_argument("no methods");
    if (params.samples_per_prompt < 1) throw std::invalid_argument("samples_per_prompt < 1");

    std::vector<Job> jobs;
    for (std::size_t m = 0; m < methods.size(); m++)
        for (std::size_t p = 0; p < prompts.size(); p++)
            for (int s = 0; s < params.samples_per_prompt; s++) jobs.push_back({m, p, s});

    std::vector<TokenIds> encoded(prompts.size());
    for (std::size_t p = 0; p < prompts.size(); p++)
        encoded[p] = encode_prompt(prompts[p].instruction, vocab);

    MetricReport report;
    report.method_order = methods;
    report.runs.resize(jobs.size());

    const bool has_checker = params.checker.has_value();
    run_jobs(jobs.size(), params.workers, [&](std::size_t i) {
        const Job& job = jobs[i];
        const std::string& method = methods[job.method_idx];
        const TokenIds& prompt_ids = encoded[job.prompt_idx];
        const std::uint64_t seed =
            splitmix64(params.seed ^ splitmix64((job.method_idx << 40) ^ (job.prompt_idx << 16) ^
                                                static_cast<std::uint64_t>(job.sample)));

        std::unique_ptr<SpeculativeModel> owned;
        SpeculativeModel* m = &model;
        if (!model.shareable_across_decodes()) {
            owned = model.clone();
            m = owned.get();
        }

        StopCondition stop{params.max_tokens, kEosId};
        DecodeResult decoded;
        if (method == "ntp") {
            decoded = ntp_decode(*m, prompt_ids, params.accept.temperature, stop, seed);
        } else {
            AcceptanceParams accept = params.accept;
            accept.truncation = method == "medusa" ? FragmentTruncation::None
                                                   : FragmentTruncation::Strict;
            decoded = decode(*m, prompt_ids, accept, stop, seed);
        }

        RunRecord run;
        run.prompt_id = prompts[job.prompt_idx].id;
        run.method = method;
        run.output_text = decode(decoded.output.ids, vocab);
        run.trace = std::move(decoded.trace);
        run.syntax_ok = syntax_check(prompts[job.prompt_idx].instruction + run.output_text).ok;
        if (has_checker && prompts[job.prompt_idx].testbench) {
            const CheckerOutcome outcome = run_external_checker(
                *params.checker, prompts[job.prompt_idx].instruction + run.output_text,
                *prompts[job.prompt_idx].testbench, i);
            run.functional_ok = outcome.ok;
            run.functional_reason = outcome.reason;
        }
        report.runs[i] = std::move(run);
    });

    // deterministic reduce over the job grid
    std::optional<double> ntp_speed;
    for (std::size_t m = 0; m < methods.size(); m++) {
        std::vector<const RunRecord*> method_runs;
        for (std::size_t i = 0; i < jobs.size(); i++)
            if (jobs[i].method_idx == m) method_runs.push_back(&report.runs[i]);

        MethodMetrics metrics;
        double speed_sum = 0.0, mal_sum = 0.0;
        for (const RunRecord* run : method_runs) {
            const double t = run_time(*run, params.time_source);
            if (t <= 0.0) throw std::runtime_error("non-positive run time");
            speed_sum += static_cast<double>(run->trace.total_tokens) / t;
            mal_sum += mean_accepted_length(run->trace);
        }
        metrics.speed = speed_sum / static_cast<double>(method_runs.size());
        metrics.mean_accepted_len = mal_sum / static_cast<double>(method_runs.size());

        int prompts_passed = 0;
        std::map<int, double> pass_sums;
        for (std::size_t p = 0; p < prompts.size(); p++) {
            int c = 0;
            for (const RunRecord* run : method_runs)
                if (run->prompt_id == prompts[p].id && run_passed(*run, has_checker)) c++;
            if (c > 0) prompts_passed++;
            for (int k : params.pass_ks)
                if (k <= params.samples_per_prompt)
                    pass_sums[k] += pass_at_k(params.samples_per_prompt, c, k);
        }
        for (const auto& [k, sum] : pass_sums)
            metrics.pass_at[k] = sum / static_cast<double>(prompts.size());
        metrics.pass_rate = pass_rate(prompts_passed, static_cast<int>(prompts.size()));

        if (methods[m] == "ntp") ntp_speed = metrics.speed;
        report.methods[methods[m]] = std::move(metrics);
    }
    if (ntp_speed) {
        for (auto& [name, metrics] : report.methods)
            metrics.speedup_vs_ntp = speedup(metrics.speed, *ntp_speed);
    }

    nlohmann::ordered_json echo;
    echo["methods"] = methods;
    echo["samples_per_prompt"] = params.samples_per_prompt;
    echo["pass_ks"] = params.pass_ks;
    echo["max_tokens"] = params.max_tokens;
    echo["seed"] = params.seed;
    echo["workers"] = params.workers;
    echo["time_source"] = params.time_source == TimeSource::Wall ? "wall" : "calls";
    echo["epsilon"] = params.accept.epsilon;
    echo["delta"] = params.accept.delta;
    echo["temperature"] = params.accept.temperature;
    echo["top_k_per_head"] = params.accept.top_k_per_head;
    echo["max_candidates"] = params.accept.max_candidates;
    echo["checker"] = has_checker ? params.checker->command_template : "";
    report.config_echo = echo.dump();
    return report;
}

std::string MetricReport::to_json_string() const {
    nlohmann::ordered_json j;
    j["config"] = nlohmann::ordered_json::parse(config_echo.empty() ? "{}" : config_echo);
    nlohmann::ordered_json method_block;
    for (const std::string& name : method_order) {
        const MethodMetrics& m = methods.at(name);
        nlohmann::ordered_json mj;
        mj["speed_tokens_per_s"] = m.speed;
        if (m.speedup_vs_ntp) mj["speedup"] = *m.speedup_vs_ntp;
        mj["mean_accepted_len"] = m.mean_accepted_len;
        nlohmann::ordered_json pk;
        for (const auto& [k, value] : m.pass_at) pk["pass@" + std::to_string(k)] = value;
        mj["pass_at_k"] = std::move(pk);
        mj["pass_rate"] = m.pass_rate;
        method_block[name] = std::move(mj);
    }
    j["methods"] = std::move(method_block);
    return j.dump(2) + "\n";
}

std::string MetricReport::to_csv_string() const {
    std::ostringstream out;
    out << "Method,Speed (tokens/s),Speedup\n";
    char line[160];
    for (const std::string& name : method_order) {
        const MethodMetrics& m = methods.at(name);
        if (m.speedup_vs_ntp)
            std::snprintf(line, sizeof(line), "%s,%.2f,%.2f\n", name.c_str(), m.speed,
                          *m.speedup_vs_ntp);
        else
            std::snprintf(line, sizeof(line), "%s,%.2f,\n", name.c_str(), m.speed);
        out << line;
    }
    return out.str();
}

}  // namespace vsd
