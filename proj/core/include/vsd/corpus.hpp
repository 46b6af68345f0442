// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vsd/minhash.hpp"
#include "vsd/syntax.hpp"
#include "vsd/vocab.hpp"

namespace vsd {

struct RawFile {
    enum class Origin { LocalDir, Archive };

    std::string path;
    std::string bytes;
    Origin origin = Origin::LocalDir;
};

struct ModuleRecord {
    std::string code;  // one module..endmodule unit, verbatim
    std::optional<std::string> description;
    FragmentedCode fragments;
    MinHashSignature signature;
    std::string source_path;
};

struct CorpusParams {
    int shingle_k = 8;
    int num_hashes = 128;
    double dedup_threshold = 0.85;
    double comment_ratio_max = 0.8;
    std::uint64_t seed = 1;
};

// Slices balanced module..endmodule spans out of the lexed token stream, so
// keywords inside comments or strings are never boundaries. Files without a
// complete pair yield no records.
std::vector<ModuleRecord> extract_modules(const RawFile& file);

// Greedy scan in input order: a record is dropped when its estimated Jaccard
// against any retained record reaches the threshold. LSH bands prefilter the
// comparison set; the signature comparison decides.
std::vector<ModuleRecord> dedup(std::vector<ModuleRecord> records, double threshold);

// Drops records whose comment-byte fraction exceeds the cap and records that
// fail the syntax check.
std::vector<ModuleRecord> filter_quality(std::vector<ModuleRecord> records,
                                         double comment_ratio_max);

double comment_byte_ratio(std::string_view code);

// One JSON line per record: instruction, output code, fragment spans, and
// fragment-encoded token ids.
void emit_dataset(const std::vector<ModuleRecord>& records, const Vocab& vocab,
                  std::ostream& out);

struct DatasetRecord {
    std::string instruction;
    bool has_description = false;
    std::string output;
    std::vector<std::pair<std::size_t, std::size_t>> fragment_spans;
    TokenIds token_ids;
};

std::vector<DatasetRecord> read_dataset(std::istream& in);

struct PipelineReport {
    std::size_t files = 0;
    std::size_t extracted = 0;
    std::size_t dropped_dedup = 0;
    std::size_t dropped_syntax = 0;
    std::size_t dropped_comments = 0;
    std::size_t kept = 0;

    std::string to_json_string() const;
};

struct PipelineResult {
    std::vector<ModuleRecord> records;
    PipelineReport report;
};

// ingest -> extract -> dedup -> filter, with fragment annotation from each
// module's own AST. Descriptions come from an optional sidecar map keyed by
// module name.
PipelineResult run_corpus_pipeline(const std::vector<RawFile>& files, const CorpusParams& params,
                                   const std::map<std::string, std::string>& descriptions = {});

// Module name of a module..endmodule unit ("" when absent).
std::string module_name(std::string_view code);

}  // namespace vsd
