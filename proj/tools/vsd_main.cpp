// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "vsd/bench.hpp"
#include "vsd/bpe.hpp"
#include "vsd/corpus.hpp"
#include "vsd/decode.hpp"
#include "vsd/json_dump.hpp"
#include "vsd/labels.hpp"
#include "vsd/lexer.hpp"
#include "vsd/mocks.hpp"
#include "vsd/ngram.hpp"
#include "vsd/parser.hpp"
#include "vsd/syntax.hpp"

namespace {

// exit codes: 0 ok, 1 usage, 2 data error, 3 external-tool failure
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ToolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write file: " + path);
    out << content;
}

std::vector<std::string> sorted_verilog_files(const std::string& dir) {
    if (!std::filesystem::is_directory(dir)) throw DataError("not a directory: " + dir);
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".v")
            paths.push_back(entry.path().string());
    }
    std::sort(paths.begin(), paths.end());
    return paths;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    if (out.empty()) throw DataError("empty integer list: '" + csv + "'");
    return out;
}

vsd::Vocab load_vocab(const std::string& path) {
    if (!std::filesystem::exists(path)) throw DataError("vocabulary not found: " + path);
    return vsd::Vocab::load(path);
}

vsd::FragmentTruncation truncation_from(const std::string& name) {
    if (name == "strict") return vsd::FragmentTruncation::Strict;
    if (name == "lenient") return vsd::FragmentTruncation::Lenient;
    if (name == "none") return vsd::FragmentTruncation::None;
    throw DataError("unknown truncation mode: " + name);
}

// Fragment-encode a source file against its own AST when it parses, the
// construct-wide default set otherwise.
vsd::TokenSequence encode_file_fragmented(const std::string& source, const vsd::Vocab& vocab) {
    vsd::SignificantTokenSet sig;
    try {
        sig = vsd::extract_significant_tokens(vsd::parse(vsd::lex(source)));
    } catch (const vsd::SyntaxError&) {
        sig = vsd::default_significant_set();
    }
    return vsd::encode_fragmented(vsd::segment(source, sig), vocab);
}

void print_trace_summary(const vsd::DecodeTrace& trace) {
    std::fprintf(stderr,
                 "steps=%zu emitted=%zu content_tokens=%ld model_calls=%ld wall_s=%.3f "
                 "tokens_per_s=%.2f mean_accepted_len=%.3f\n",
                 trace.steps.size(),
                 [&] {
                     std::size_t n = 0;
                     for (const auto& s : trace.steps) n += s.emitted.size();
                     return n;
                 }(),
                 trace.total_tokens, trace.model_calls, trace.wall_time,
                 trace.wall_time > 0 ? trace.total_tokens / trace.wall_time : 0.0,
                 trace.steps.empty()
                     ? 0.0
                     : [&] {
                           std::size_t n = 0;
                           for (const auto& s : trace.steps) n += s.emitted.size();
                           return static_cast<double>(n) / trace.steps.size();
                       }());
}

// --- corpus ---

struct CorpusArgs {
    std::string input_dir;
    std::string dataset_path;
    std::string report_path;
    std::string vocab_path;
    std::string save_vocab_path;
    std::string descriptions_dir;
    int train_vocab_size = 1024;
    vsd::CorpusParams params;
};

int run_corpus(const CorpusArgs& args) {
    const auto paths = sorted_verilog_files(args.input_dir);
    if (paths.empty()) throw DataError("no .v files under " + args.input_dir);

    std::vector<vsd::RawFile> files;
    for (const auto& p : paths) files.push_back({p, read_file(p)});

    std::map<std::string, std::string> descriptions;
    if (!args.descriptions_dir.empty()) {
        for (const auto& entry : std::filesystem::directory_iterator(args.descriptions_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".txt")
                descriptions[entry.path().stem().string()] = read_file(entry.path().string());
        }
    }

    const vsd::PipelineResult result = vsd::run_corpus_pipeline(files, args.params, descriptions);
    if (result.records.empty()) throw DataError("pipeline kept no records");

    vsd::Vocab vocab;
    if (!args.vocab_path.empty()) {
        vocab = load_vocab(args.vocab_path);
    } else {
        std::vector<std::string> codes;
        for (const auto& rec : result.records) codes.push_back(rec.code);
        vocab = vsd::train_bpe(codes, args.train_vocab_size);
    }
    if (!args.save_vocab_path.empty()) vocab.save(args.save_vocab_path);

    std::ofstream dataset(args.dataset_path, std::ios::binary);
    if (!dataset) throw DataError("cannot write dataset: " + args.dataset_path);
    vsd::emit_dataset(result.records, vocab, dataset);
    if (!args.report_path.empty()) write_file(args.report_path, result.report.to_json_string());

    std::printf("kept %zu of %zu extracted modules (%zu files); dataset: %s\n",
                result.report.kept, result.report.extracted, result.report.files,
                args.dataset_path.c_str());
    return 0;
}

// --- tokenize ---

int run_tokenize_train(const std::vector<std::string>& inputs, int vocab_size,
                       const std::string& output) {
    std::vector<std::string> corpus;
    for (const auto& input : inputs) {
        if (std::filesystem::is_directory(input)) {
            for (const auto& p : sorted_verilog_files(input)) corpus.push_back(read_file(p));
        } else {
            corpus.push_back(read_file(input));
        }
    }
    if (corpus.empty()) throw DataError("no training inputs");
    const vsd::Vocab vocab = vsd::train_bpe(corpus, vocab_size);
    vocab.save(output);
    std::printf("vocab: %d tokens (%d merges) -> %s\n", vocab.size(), vocab.merge_count(),
                output.c_str());
    return 0;
}

int run_tokenize_encode(const std::string& vocab_path, const std::string& input,
                        bool fragmented, bool show_frag, const std::string& output) {
    const vsd::Vocab vocab = load_vocab(vocab_path);
    const std::string source = read_file(input);

    vsd::TokenIds ids;
    if (fragmented || show_frag) {
        const vsd::TokenSequence seq = encode_file_fragmented(source, vocab);
        ids = seq.ids;
        if (show_frag) {
            std::size_t begin = 0;
            std::int32_t current = seq.fragment_index.empty() ? -1 : seq.fragment_index[0];
            for (std::size_t i = 0; i <= seq.ids.size(); i++) {
                if (i < seq.ids.size() && seq.fragment_index[i] == current) continue;
                std::printf("frag %4d:", current);
                for (std::size_t j = begin; j < i; j++) std::printf(" %d", seq.ids[j]);
                std::printf("\n");
                if (i < seq.ids.size()) {
                    begin = i;
                    current = seq.fragment_index[i];
                }
            }
        }
    } else {
        ids = vsd::encode(source, vocab);
    }

    nlohmann::ordered_json j = ids;
    write_file(output.empty() ? "-" : output, j.dump() + "\n");
    return 0;
}

int run_tokenize_inspect(const std::string& input, const std::string& dump_ast,
                         const std::string& dump_fragments) {
    const std::string source = read_file(input);
    const auto tokens = vsd::lex(source);
    const vsd::Ast ast = vsd::parse(tokens);
    const auto sig = vsd::extract_significant_tokens(ast);
    const vsd::FragmentedCode fc = vsd::segment(source, sig);

    if (!dump_ast.empty()) write_file(dump_ast, vsd::ast_to_json_string(ast));
    if (!dump_fragments.empty()) write_file(dump_fragments, vsd::fragments_to_json_string(fc));

    std::size_t non_trivia = 0;
    for (const auto& t : tokens)
        if (!t.is_trivia()) non_trivia++;
    std::printf("tokens=%zu non_trivia=%zu fragments=%zu significant_keywords=%zu\n",
                tokens.size(), non_trivia, fc.fragments.size(), sig.keywords.size());
    return 0;
}

// --- labels ---

struct LabelsArgs {
    int heads = 0;
    std::string ids_csv;
    std::string input;
    std::string vocab_path;
    bool check = false;
    int cases = 1000;
    std::string dump_path;
    std::string binary_path;
};

int run_labels(const LabelsArgs& args) {
    vsd::TokenIds base;
    if (!args.ids_csv.empty()) {
        for (int v : parse_int_list(args.ids_csv)) base.push_back(v);
    } else if (!args.input.empty()) {
        if (args.vocab_path.empty()) throw DataError("--input needs --vocab");
        const vsd::Vocab vocab = load_vocab(args.vocab_path);
        base = encode_file_fragmented(read_file(args.input), vocab).ids;
    } else {
        throw DataError("provide --ids or --input");
    }

    const vsd::LabelMatrix naive = vsd::build_labels_naive(base, args.heads);
    const vsd::LabelMatrix parallel = vsd::build_labels_parallel(base, args.heads);
    if (naive != parallel) throw DataError("parallel label construction diverged from the oracle");

    if (args.check) {
        std::mt19937_64 rng(7);
        std::uniform_int_distribution<std::size_t> len(1, 512);
        std::uniform_int_distribution<int> heads(1, 10);
        std::uniform_real_distribution<double> frag(0.0, 0.5);
        std::uniform_int_distribution<vsd::TokenId> content(vsd::kNumSpecial,
                                                            vsd::kNumSpecial + 200);
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        for (int i = 0; i < args.cases; i++) {
            vsd::TokenIds row(len(rng));
            const double p = frag(rng);
            for (auto& id : row) id = coin(rng) < p ? vsd::kFragId : content(rng);
            const int h = heads(rng);
            if (vsd::build_labels_naive(row, h) != vsd::build_labels_parallel(row, h))
                throw DataError("parallel label construction diverged on a random case");
        }
        std::printf("label check passed: input + %d random cases\n", args.cases);
    }

    if (!args.dump_path.empty()) write_file(args.dump_path, naive.to_json_string());
    if (!args.binary_path.empty()) naive.save(args.binary_path);
    if (args.dump_path.empty() && args.binary_path.empty() && !args.check)
        std::printf("labels: rows=%zu seq_len=%zu\n", naive.rows(), naive.seq_len());
    return 0;
}

// --- train-ref ---

int run_train_ref(const std::string& dataset_path, const std::string& vocab_path, int order,
                  int heads, double alpha, const std::string& output) {
    const vsd::Vocab vocab = load_vocab(vocab_path);
    std::ifstream in(dataset_path, std::ios::binary);
    if (!in) throw DataError("cannot read dataset: " + dataset_path);
    const auto dataset = vsd::read_dataset(in);
    if (dataset.empty()) throw DataError("dataset is empty: " + dataset_path);

    std::vector<vsd::TokenIds> sequences;
    for (const auto& rec : dataset) {
        vsd::TokenIds seq{vsd::kBosId};
        seq.insert(seq.end(), rec.token_ids.begin(), rec.token_ids.end());
        seq.push_back(vsd::kEosId);
        sequences.push_back(std::move(seq));
    }
    const vsd::NGramMultiHead model =
        vsd::train_ngram(sequences, order, heads, alpha, vocab.size());
    model.save(output, vocab.hash());
    std::printf("model hash: %016llx (n=%d heads=%d alpha=%g)\n",
                static_cast<unsigned long long>(model.table_hash()), order, heads, alpha);
    return 0;
}

// --- decode ---

struct DecodeArgs {
    std::string model_path;
    std::string oracle_target;
    std::string vocab_path;
    std::string prompt;
    std::string prompt_file;
    std::string mode = "spec";
    int heads = -1;
    double epsilon = 0.3;
    double delta = 0.6;
    double temperature = 0.0;
    std::string top_k = "";
    int max_candidates = 32;
    int max_tokens = 256;
    std::string trace_path;
    int latency_ms = 0;
    std::uint64_t seed = 0;
    std::string truncation = "strict";
};

int run_decode(const DecodeArgs& args) {
    const vsd::Vocab vocab = load_vocab(args.vocab_path);

    std::unique_ptr<vsd::SpeculativeModel> model;
    if (!args.oracle_target.empty()) {
        vsd::TokenIds target = encode_file_fragmented(read_file(args.oracle_target), vocab).ids;
        target.push_back(vsd::kEosId);
        const int heads = args.heads > 0 ? args.heads : 3;
        model = vsd::oracle_mock(std::move(target), heads, vocab.size(), args.latency_ms);
    } else if (!args.model_path.empty()) {
        std::uint64_t vocab_hash = 0;
        auto ngram = std::make_unique<vsd::NGramMultiHead>(
            vsd::NGramMultiHead::load(args.model_path, &vocab_hash));
        if (vocab_hash != vocab.hash())
            throw DataError("model was trained against a different vocabulary");
        ngram->set_latency_ms(args.latency_ms);
        model = std::move(ngram);
    } else {
        throw DataError("provide --model or --oracle-target");
    }

    std::string prompt_text = args.prompt;
    if (!args.prompt_file.empty()) prompt_text = read_file(args.prompt_file);
    const vsd::TokenIds prompt_ids = vsd::encode_prompt(prompt_text, vocab);

    const int model_heads = model->num_heads();
    const int used_heads =
        args.mode == "ntp" ? 0
                           : (args.heads >= 0 ? std::min(args.heads, model_heads) : model_heads);

    vsd::AcceptanceParams params;
    params.epsilon = args.epsilon;
    params.delta = args.delta;
    params.temperature = args.temperature;
    params.max_candidates = args.max_candidates;
    params.truncation = truncation_from(args.truncation);
    if (!args.top_k.empty()) {
        params.top_k_per_head = parse_int_list(args.top_k);
        if (static_cast<int>(params.top_k_per_head.size()) > used_heads + 1)
            params.top_k_per_head.resize(static_cast<std::size_t>(used_heads) + 1);
    } else {
        params.top_k_per_head.assign(static_cast<std::size_t>(used_heads) + 1, 1);
    }

    const vsd::StopCondition stop{args.max_tokens, vsd::kEosId};
    vsd::DecodeResult result;
    if (args.mode == "ntp") {
        result = vsd::ntp_decode(*model, prompt_ids, args.temperature, stop, args.seed);
    } else if (args.mode == "spec") {
        result = vsd::decode(*model, prompt_ids, params, stop, args.seed);
    } else {
        throw DataError("unknown mode: " + args.mode);
    }

    std::cout << vsd::decode(result.output.ids, vocab) << "\n";
    print_trace_summary(result.trace);
    if (!args.trace_path.empty()) {
        std::ofstream out(args.trace_path, std::ios::binary);
        if (!out) throw DataError("cannot write trace: " + args.trace_path);
        vsd::write_trace_jsonl(result.trace, out);
    }
    return 0;
}

// --- bench ---

struct BenchArgs {
    std::string model_path;
    std::string vocab_path;
    std::string prompts_path;
    std::string methods = "ours,medusa,ntp";
    std::string report_path;
    std::string csv_path;
    int samples = 20;
    double epsilon = 0.3;
    double delta = 0.6;
    double temperature = 0.0;
    std::string top_k = "1,1,1,1";
    int max_candidates = 32;
    int max_tokens = 256;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string timing = "wall";
    int latency_ms = 0;
    std::string checker_cmd;
    double checker_timeout = 30.0;
};

int run_bench(const BenchArgs& args) {
    const vsd::Vocab vocab = load_vocab(args.vocab_path);
    std::uint64_t vocab_hash = 0;
    vsd::NGramMultiHead model = vsd::NGramMultiHead::load(args.model_path, &vocab_hash);
    if (vocab_hash != vocab.hash())
        throw DataError("model was trained against a different vocabulary");
    model.set_latency_ms(args.latency_ms);

    std::ifstream prompts_in(args.prompts_path, std::ios::binary);
    if (!prompts_in) throw DataError("cannot read prompts: " + args.prompts_path);
    const auto prompts = vsd::read_prompts(prompts_in);
    if (prompts.empty()) throw DataError("prompts file is empty");

    std::vector<std::string> methods;
    {
        std::stringstream ss(args.methods);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) methods.push_back(item);
    }

    vsd::BenchParams params;
    params.accept.epsilon = args.epsilon;
    params.accept.delta = args.delta;
    params.accept.temperature = args.temperature;
    params.accept.top_k_per_head = parse_int_list(args.top_k);
    params.accept.max_candidates = args.max_candidates;
    params.samples_per_prompt = args.samples;
    params.max_tokens = args.max_tokens;
    params.seed = args.seed;
    params.workers = args.workers;
    params.time_source =
        args.timing == "calls" ? vsd::TimeSource::ModelCalls : vsd::TimeSource::Wall;
    if (!args.checker_cmd.empty())
        params.checker = vsd::ExternalChecker{args.checker_cmd, args.checker_timeout};

    const vsd::MetricReport report = vsd::run_benchmark(model, vocab, prompts, methods, params);
    for (const auto& run : report.runs) {
        if (run.functional_reason == "command not found")
            throw ToolError("external checker command not found");
    }

    if (!args.report_path.empty()) write_file(args.report_path, report.to_json_string());
    if (!args.csv_path.empty()) write_file(args.csv_path, report.to_csv_string());
    std::cout << report.to_csv_string();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vsd: syntax-aligned speculative decoding toolkit for Verilog"};
    app.require_subcommand(1);
    app.set_config("--config", "", "TOML-style key = value config file; flags win");
    app.allow_config_extras(false);

    // corpus
    CorpusArgs corpus_args;
    auto* corpus = app.add_subcommand("corpus", "ingest -> extract -> dedup -> filter -> emit");
    corpus->add_option("--input", corpus_args.input_dir, "directory of .v files")->required();
    corpus->add_option("--dataset", corpus_args.dataset_path, "output dataset JSONL")->required();
    corpus->add_option("--report", corpus_args.report_path, "pipeline report JSON");
    corpus->add_option("--vocab", corpus_args.vocab_path, "existing vocabulary JSON");
    corpus->add_option("--train-vocab", corpus_args.train_vocab_size,
                       "train a vocabulary of this size when --vocab is absent");
    corpus->add_option("--save-vocab", corpus_args.save_vocab_path, "write the vocabulary here");
    corpus->add_option("--descriptions", corpus_args.descriptions_dir,
                       "sidecar directory of <module>.txt descriptions");
    corpus->add_option("--shingle-k", corpus_args.params.shingle_k, "MinHash shingle bytes");
    corpus->add_option("--num-hashes", corpus_args.params.num_hashes, "MinHash permutations");
    corpus->add_option("--threshold", corpus_args.params.dedup_threshold, "dedup Jaccard cutoff");
    corpus->add_option("--comment-ratio", corpus_args.params.comment_ratio_max,
                       "max comment byte fraction");
    corpus->add_option("--seed", corpus_args.params.seed, "MinHash permutation seed");

    // tokenize train/encode/inspect
    auto* tokenize = app.add_subcommand("tokenize", "train vocab / encode / inspect fragments");
    tokenize->require_subcommand(1);
    std::vector<std::string> tk_inputs;
    int tk_vocab_size = 1024;
    std::string tk_output;
    auto* tk_train = tokenize->add_subcommand("train", "train a BPE vocabulary");
    tk_train->add_option("--input", tk_inputs, "files or directories")->required();
    tk_train->add_option("--vocab-size", tk_vocab_size, "total vocabulary size");
    tk_train->add_option("--output", tk_output, "vocabulary JSON path")->required();

    std::string enc_vocab, enc_input, enc_output;
    bool enc_fragmented = false, enc_show_frag = false;
    auto* tk_encode = tokenize->add_subcommand("encode", "encode a file to token ids");
    tk_encode->add_option("--vocab", enc_vocab, "vocabulary JSON")->required();
    tk_encode->add_option("--input", enc_input, "source file")->required();
    tk_encode->add_flag("--fragmented", enc_fragmented, "insert [FRAG] at fragment boundaries");
    tk_encode->add_flag("--show-frag", enc_show_frag, "print fragment-aligned ids");
    tk_encode->add_option("--output", enc_output, "ids JSON path ('-' for stdout)");

    std::string ins_input, ins_dump_ast, ins_dump_frags;
    auto* tk_inspect = tokenize->add_subcommand("inspect", "dump AST and fragments as JSON");
    tk_inspect->add_option("--input", ins_input, "source file")->required();
    tk_inspect->add_option("--dump-ast", ins_dump_ast, "AST JSON path ('-' for stdout)");
    tk_inspect->add_option("--dump-fragments", ins_dump_frags,
                           "fragment JSON path ('-' for stdout)");

    // labels
    LabelsArgs labels_args;
    auto* labels = app.add_subcommand("labels", "build/inspect label matrices");
    labels->add_option("--heads", labels_args.heads, "decoding head count")
        ->required()
        ->check(CLI::Range(1, 1024));
    labels->add_option("--ids", labels_args.ids_csv, "comma-separated base label ids");
    labels->add_option("--input", labels_args.input, "source file to fragment-encode");
    labels->add_option("--vocab", labels_args.vocab_path, "vocabulary JSON for --input");
    labels->add_flag("--check", labels_args.check, "cross-check bulk construction vs the oracle");
    labels->add_option("--cases", labels_args.cases, "random cases for --check");
    labels->add_option("--dump", labels_args.dump_path, "label matrix JSON ('-' for stdout)");
    labels->add_option("--binary", labels_args.binary_path, "label matrix binary path");

    // train-ref
    std::string tr_dataset, tr_vocab, tr_output;
    int tr_n = 3, tr_heads = 3;
    double tr_alpha = 0.1;
    auto* train_ref = app.add_subcommand("train-ref", "train the n-gram reference model");
    train_ref->add_option("--dataset", tr_dataset, "dataset JSONL")->required();
    train_ref->add_option("--vocab", tr_vocab, "vocabulary JSON")->required();
    train_ref->add_option("--n", tr_n, "n-gram order")->check(CLI::Range(1, 16));
    train_ref->add_option("--heads", tr_heads, "decoding heads")->check(CLI::Range(0, 64));
    train_ref->add_option("--alpha", tr_alpha, "additive smoothing");
    train_ref->add_option("--output", tr_output, "model output path")->required();

    // decode
    DecodeArgs decode_args;
    auto* dec = app.add_subcommand("decode", "speculative or NTP decoding");
    dec->add_option("--model", decode_args.model_path, "n-gram model file");
    dec->add_option("--oracle-target", decode_args.oracle_target,
                    "replay this file through the oracle mock instead of a model");
    dec->add_option("--vocab", decode_args.vocab_path, "vocabulary JSON")->required();
    dec->add_option("--prompt", decode_args.prompt, "prompt text");
    dec->add_option("--prompt-file", decode_args.prompt_file, "prompt file");
    dec->add_option("--mode", decode_args.mode, "spec | ntp");
    dec->add_option("--heads", decode_args.heads, "heads to use (-1 = all)");
    dec->add_option("--epsilon", decode_args.epsilon, "typical acceptance epsilon");
    dec->add_option("--delta", decode_args.delta, "typical acceptance delta");
    dec->add_option("--temperature", decode_args.temperature, "sampling temperature");
    dec->add_option("--top-k", decode_args.top_k, "per-level candidate budgets, e.g. 4,2,2,1");
    dec->add_option("--max-candidates", decode_args.max_candidates, "candidate path cap");
    dec->add_option("--max-tokens", decode_args.max_tokens, "emitted token bound");
    dec->add_option("--trace", decode_args.trace_path, "write the decode trace JSONL here");
    dec->add_option("--latency-ms", decode_args.latency_ms, "artificial per-call latency");
    dec->add_option("--seed", decode_args.seed, "sampling seed");
    dec->add_option("--fragment-truncation", decode_args.truncation, "strict | lenient | none");

    // bench
    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run the evaluation harness");
    bench->add_option("--model", bench_args.model_path, "n-gram model file")->required();
    bench->add_option("--vocab", bench_args.vocab_path, "vocabulary JSON")->required();
    bench->add_option("--prompts", bench_args.prompts_path, "prompts JSONL")->required();
    bench->add_option("--methods", bench_args.methods, "comma list of ours,medusa,ntp");
    bench->add_option("--samples", bench_args.samples, "samples per prompt");
    bench->add_option("--report", bench_args.report_path, "metric report JSON");
    bench->add_option("--csv", bench_args.csv_path, "speed table CSV");
    bench->add_option("--epsilon", bench_args.epsilon, "typical acceptance epsilon");
    bench->add_option("--delta", bench_args.delta, "typical acceptance delta");
    bench->add_option("--temperature", bench_args.temperature, "sampling temperature");
    bench->add_option("--top-k", bench_args.top_k, "per-level candidate budgets");
    bench->add_option("--max-candidates", bench_args.max_candidates, "candidate path cap");
    bench->add_option("--max-tokens", bench_args.max_tokens, "emitted token bound");
    bench->add_option("--seed", bench_args.seed, "master seed");
    bench->add_option("--workers", bench_args.workers, "concurrent decode jobs");
    bench->add_option("--timing", bench_args.timing, "wall | calls");
    bench->add_option("--latency-ms", bench_args.latency_ms, "artificial per-call latency");
    bench->add_option("--checker-cmd", bench_args.checker_cmd,
                      "functional checker template with {design} and {testbench}");
    bench->add_option("--checker-timeout", bench_args.checker_timeout, "checker timeout seconds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    std::cerr << "[vsd] resolved config:\n" << app.config_to_str(true, false);

    try {
        if (*corpus) return run_corpus(corpus_args);
        if (*tk_train) return run_tokenize_train(tk_inputs, tk_vocab_size, tk_output);
        if (*tk_encode)
            return run_tokenize_encode(enc_vocab, enc_input, enc_fragmented, enc_show_frag,
                                       enc_output);
        if (*tk_inspect) return run_tokenize_inspect(ins_input, ins_dump_ast, ins_dump_frags);
        if (*labels) return run_labels(labels_args);
        if (*train_ref)
            return run_train_ref(tr_dataset, tr_vocab, tr_n, tr_heads, tr_alpha, tr_output);
        if (*dec) return run_decode(decode_args);
        if (*bench) return run_bench(bench_args);
    } catch (const ToolError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
