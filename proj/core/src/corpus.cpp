// SPDX-License-Identifier: Apache-2.0

#include "vsd/corpus.hpp"

#include <istream>
#include <ostream>
#include <unordered_map>

#include <json.hpp>

#include "vsd/bpe.hpp"
#include "vsd/lexer.hpp"
#include "vsd/parser.hpp"

namespace vsd {

std::vector<ModuleRecord> extract_modules(const RawFile& file) {
    std::vector<Token> tokens;
    try {
        tokens = lex(file.bytes);
    } catch (const LexError&) {
        return {};
    }

    std::vector<ModuleRecord> records;
    int depth = 0;
    std::size_t start = 0;
    for (const Token& t : tokens) {
        if (t.kind != TokenKind::Keyword) continue;
        if (t.text == "module" || t.text == "macromodule") {
            if (depth == 0) start = t.begin;
            depth++;
        } else if (t.text == "endmodule") {
            if (depth == 0) continue;  // stray endmodule
            depth--;
            if (depth == 0) {
                ModuleRecord rec;
                rec.code = file.bytes.substr(start, t.end - start);
                rec.source_path = file.path;
                records.push_back(std::move(rec));
            }
        }
    }
    return records;
}

std::string module_name(std::string_view code) {
    try {
        bool after_module = false;
        for (const Token& t : lex(code)) {
            if (t.is_trivia()) continue;
            if (after_module && t.kind == TokenKind::Identifier) return t.text;
            after_module = t.kind == TokenKind::Keyword &&
                           (t.text == "module" || t.text == "macromodule");
        }
    } catch (const LexError&) {
    }
    return "";
}

namespace {

std::uint64_t band_key(const MinHashSignature& sig, std::size_t band, std::size_t rows) {
    std::uint64_t h = splitmix64(band ^ 0x51ed270be9cfull);
    for (std::size_t r = 0; r < rows; r++)
        h = splitmix64(h ^ sig.values[band * rows + r]);
    return h;
}

}  // namespace

std::vector<ModuleRecord> dedup(std::vector<ModuleRecord> records, double threshold) {
    if (records.empty()) return records;
    const std::size_t num_hashes = records.front().signature.values.size();
    const std::size_t rows = num_hashes >= 4 ? 4 : 1;
    const std::size_t bands = num_hashes / rows;

    std::vector<ModuleRecord> kept;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;

    for (auto& rec : records) {
        std::vector<std::size_t> candidates;
        for (std::size_t b = 0; b < bands; b++) {
            const auto it = buckets.find(band_key(rec.signature, b, rows));
            if (it == buckets.end()) continue;
            candidates.insert(candidates.end(), it->second.begin(), it->second.end());
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

        bool duplicate = false;
        for (std::size_t idx : candidates) {
            if (estimate_jaccard(rec.signature, kept[idx].signature) >= threshold) {
                duplicate = true;
                break;
            }
        }
        if (duplicate) continue;
        const std::size_t idx = kept.size();
        for (std::size_t b = 0; b < bands; b++)
            buckets[band_key(rec.signature, b, rows)].push_back(idx);
        kept.push_back(std::move(rec));
    }
    return kept;
}

double comment_byte_ratio(std::string_view code) {
    if (code.empty()) return 0.0;
    std::size_t comment_bytes = 0;
    try {
        for (const Token& t : lex(code))
            if (t.kind == TokenKind::Comment) comment_bytes += t.text.size();
    } catch (const LexError&) {
        return 0.0;
    }
    return static_cast<double>(comment_bytes) / static_cast<double>(code.size());
}

namespace {

std::vector<ModuleRecord> filter_quality_impl(std::vector<ModuleRecord> records,
                                              double comment_ratio_max,
                                              PipelineReport* report) {
    std::vector<ModuleRecord> kept;
    for (auto& rec : records) {
        if (comment_byte_ratio(rec.code) > comment_ratio_max) {
            if (report) report->dropped_comments++;
            continue;
        }
        if (!syntax_check(rec.code).ok) {
            if (report) report->dropped_syntax++;
            continue;
        }
        kept.push_back(std::move(rec));
    }
    return kept;
}

}  // namespace

std::vector<ModuleRecord> filter_quality(std::vector<ModuleRecord> records,
                                         double comment_ratio_max) {
    return filter_quality_impl(std::move(records), comment_ratio_max, nullptr);
}

PipelineResult run_corpus_pipeline(const std::vector<RawFile>& files, const CorpusParams& params,
                                   const std::map<std::string, std::string>& descriptions) {
    PipelineResult result;
    result.report.files = files.size();

    for (const RawFile& file : files) {
        auto records = extract_modules(file);
        for (auto& rec : records) result.records.push_back(std::move(rec));
    }
    result.report.extracted = result.records.size();

    for (auto& rec : result.records)
        rec.signature = minhash(rec.code, params.shingle_k, params.num_hashes, params.seed);

    const std::size_t before_dedup = result.records.size();
    result.records = dedup(std::move(result.records), params.dedup_threshold);
    result.report.dropped_dedup = before_dedup - result.records.size();

    result.records =
        filter_quality_impl(std::move(result.records), params.comment_ratio_max, &result.report);

    for (auto& rec : result.records) {
        const Ast ast = parse(lex(rec.code));
        rec.fragments = segment(rec.code, extract_significant_tokens(ast));
        const auto it = descriptions.find(module_name(rec.code));
        if (it != descriptions.end()) rec.description = it->second;
    }
    result.report.kept = result.records.size();
    return result;
}

void emit_dataset(const std::vector<ModuleRecord>& records, const Vocab& vocab,
                  std::ostream& out) {
    for (const ModuleRecord& rec : records) {
        const TokenSequence seq = encode_fragmented(rec.fragments, vocab);
        nlohmann::ordered_json j;
        j["instruction"] = rec.description.value_or("");
        j["has_description"] = rec.description.has_value();
        j["output"] = rec.code;
        nlohmann::ordered_json spans = nlohmann::ordered_json::array();
        for (const Fragment& f : rec.fragments.fragments) spans.push_back({f.begin, f.end});
        j["fragment_spans"] = std::move(spans);
        j["token_ids_with_frag"] = seq.ids;
        out << j.dump() << "\n";
    }
}

std::vector<DatasetRecord> read_dataset(std::istream& in) {
    std::vector<DatasetRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        DatasetRecord rec;
        rec.instruction = j.at("instruction").get<std::string>();
        rec.has_description = j.at("has_description").get<bool>();
        rec.output = j.at("output").get<std::string>();
        for (const auto& span : j.at("fragment_spans"))
            rec.fragment_spans.emplace_back(span.at(0).get<std::size_t>(),
                                            span.at(1).get<std::size_t>());
        rec.token_ids = j.at("token_ids_with_frag").get<TokenIds>();
        records.push_back(std::move(rec));
    }
    return records;
}

std::string PipelineReport::to_json_string() const {
    nlohmann::ordered_json j;
    j["files"] = files;
    j["extracted"] = extracted;
    j["dropped"] = {{"dedup", dropped_dedup},
                    {"syntax", dropped_syntax},
                    {"comments", dropped_comments}};
    j["kept"] = kept;
    return j.dump(2) + "\n";
}

}  // namespace vsd
