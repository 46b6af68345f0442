// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "vsd/bpe.hpp"
#include "vsd/corpus.hpp"

using namespace vsd;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// independent oracle: exact Jaccard over explicit shingle sets
std::set<std::string> shingle_set(std::string_view text, int k) {
    std::set<std::string> out;
    if (text.empty()) return out;
    if (static_cast<int>(text.size()) < k) {
        out.insert(std::string(text));
        return out;
    }
    for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= text.size(); i++)
        out.insert(std::string(text.substr(i, static_cast<std::size_t>(k))));
    return out;
}

double exact_jaccard(std::string_view a, std::string_view b, int k) {
    const auto sa = shingle_set(a, k);
    const auto sb = shingle_set(b, k);
    std::size_t inter = 0;
    for (const auto& s : sa) inter += sb.count(s);
    const std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::string random_text(std::mt19937_64& rng, std::size_t len) {
    static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz0123456789_;()= ";
    std::uniform_int_distribution<std::size_t> pick(0, sizeof(alphabet) - 2);
    std::string out(len, ' ');
    for (auto& c : out) c = alphabet[pick(rng)];
    return out;
}

std::vector<RawFile> load_corpus20() {
    const std::string dir = std::string(VSD_FIXTURE_DIR) + "/corpus20";
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    std::vector<RawFile> files;
    for (const auto& p : paths) files.push_back({p.string(), read_file(p.string())});
    return files;
}

ModuleRecord make_record(std::string code, const CorpusParams& params) {
    ModuleRecord rec;
    rec.code = std::move(code);
    rec.signature = minhash(rec.code, params.shingle_k, params.num_hashes, params.seed);
    return rec;
}

}  // namespace

TEST_CASE("extract_modules slices balanced units") {
    RawFile two{"two.v", "module a; endmodule\nmodule b (x); input x; endmodule\n"};
    const auto records = extract_modules(two);
    REQUIRE(records.size() == 2);
    CHECK(records[0].code == "module a; endmodule");
    CHECK(records[1].code == "module b (x); input x; endmodule");

    RawFile commented{"c.v",
                      "// module fake\nmodule real_one; endmodule\n/* endmodule */\n"};
    const auto one = extract_modules(commented);
    REQUIRE(one.size() == 1);
    CHECK(one[0].code == "module real_one; endmodule");

    CHECK(extract_modules(RawFile{"empty.v", ""}).empty());
    CHECK(extract_modules(RawFile{"frag.v", "module unterminated;"}).empty());
    CHECK(extract_modules(RawFile{"plain.v", "wire w;"}).empty());
}

TEST_CASE("module_name reads the declared name") {
    CHECK(module_name("module   foo_bar (a); endmodule") == "foo_bar");
    CHECK(module_name("wire w;") == "");
}

TEST_CASE("minhash signatures behave like Jaccard") {
    const CorpusParams params;

    SUBCASE("identical texts match slot for slot") {
        const auto a = minhash("module m; endmodule", 8, 128, 1);
        const auto b = minhash("module m; endmodule", 8, 128, 1);
        CHECK(estimate_jaccard(a, b) == 1.0);
    }
    SUBCASE("disjoint shingle sets estimate near zero") {
        std::mt19937_64 rng(5);
        const std::string a = random_text(rng, 300);
        std::string b = random_text(rng, 300);
        std::replace(b.begin(), b.end(), 'a', 'A');  // keep alphabets disjoint enough
        const double exact = exact_jaccard(a, b, 8);
        REQUIRE(exact == 0.0);
        const double est = estimate_jaccard(minhash(a, 8, 128, 1), minhash(b, 8, 128, 1));
        CHECK(est <= 0.05);
    }
    SUBCASE("estimate tracks a pair built to sit at exactly 0.5") {
        // shared random prefix P plus distinct tails X/Y with
        // |X| = |Y| = 32 and |P| - 7 = 64 shared shingles
        std::mt19937_64 rng(12);
        const std::string prefix = random_text(rng, 71);
        const std::string a = prefix + random_text(rng, 32);
        const std::string b = prefix + random_text(rng, 32);
        const double exact = exact_jaccard(a, b, 8);
        REQUIRE(exact == doctest::Approx(0.5).epsilon(1e-12));
        const double est = estimate_jaccard(minhash(a, 8, 128, 3), minhash(b, 8, 128, 3));
        CHECK(std::abs(est - exact) <= 0.1);
    }
    SUBCASE("estimates stay near the exact value on random pairs") {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 10; trial++) {
            const std::string shared = random_text(rng, 100 + 20 * trial);
            const std::string a = shared + random_text(rng, 60);
            const std::string b = shared + random_text(rng, 60);
            const double exact = exact_jaccard(a, b, 8);
            const double est =
                estimate_jaccard(minhash(a, 8, 128, 9), minhash(b, 8, 128, 9));
            CHECK(std::abs(est - exact) <= 0.15);
        }
    }
}

TEST_CASE("dedup keeps the first of each near-duplicate cluster") {
    CorpusParams params;

    SUBCASE("duplicate pair keeps the first") {
        std::vector<ModuleRecord> records;
        records.push_back(make_record("module m; assign y = a & b; endmodule", params));
        records.push_back(make_record("module m; assign y = a & b; endmodule", params));
        const auto kept = dedup(std::move(records), params.dedup_threshold);
        CHECK(kept.size() == 1);
    }
    SUBCASE("distinct records pass through unchanged") {
        std::vector<ModuleRecord> records;
        std::mt19937_64 rng(8);
        for (int i = 0; i < 6; i++)
            records.push_back(make_record("module m" + std::to_string(i) + "; // " +
                                              random_text(rng, 200) + "\nendmodule",
                                          params));
        const auto kept = dedup(std::move(records), params.dedup_threshold);
        CHECK(kept.size() == 6);
    }
    SUBCASE("three planted clusters collapse to their first members") {
        std::mt19937_64 rng(21);
        const std::string bodies[3] = {random_text(rng, 400), random_text(rng, 400),
                                       random_text(rng, 400)};
        std::vector<ModuleRecord> records;
        std::vector<std::string> expected;
        // cluster sizes 3, 2, 2 plus three singletons = 10 records
        const int sizes[3] = {3, 2, 2};
        for (int c = 0; c < 3; c++) {
            for (int v = 0; v < sizes[c]; v++) {
                std::string code = "module c" + std::to_string(c) + "; // " + bodies[c] +
                                   std::string(static_cast<std::size_t>(v), 'x') +
                                   "\nendmodule";
                if (v == 0) expected.push_back(code);
                records.push_back(make_record(std::move(code), params));
            }
        }
        for (int s = 0; s < 3; s++) {
            std::string code =
                "module s" + std::to_string(s) + "; // " + random_text(rng, 300) + "\nendmodule";
            expected.push_back(code);
            records.push_back(make_record(std::move(code), params));
        }
        REQUIRE(records.size() == 10);

        const auto kept = dedup(std::move(records), params.dedup_threshold);
        std::vector<std::string> survivors;
        for (const auto& rec : kept) survivors.push_back(rec.code);
        std::sort(survivors.begin(), survivors.end());
        std::sort(expected.begin(), expected.end());
        CHECK(survivors == expected);

        // dedup soundness: no surviving pair at or above the threshold
        for (std::size_t i = 0; i < kept.size(); i++)
            for (std::size_t j = i + 1; j < kept.size(); j++)
                CHECK(estimate_jaccard(kept[i].signature, kept[j].signature) <
                      params.dedup_threshold);
    }
}

TEST_CASE("quality filter drops comment walls and syntax faults") {
    std::vector<ModuleRecord> records;
    CorpusParams params;
    records.push_back(make_record("module ok; wire w; endmodule", params));
    std::string wall = "module walls;\n";
    for (int i = 0; i < 40; i++) wall += "  // line after line of prose with no hardware in it\n";
    wall += "  wire w;\nendmodule";
    records.push_back(make_record(wall, params));
    records.push_back(make_record("module broken; wire a assign b; endmodule", params));

    const auto kept = filter_quality(std::move(records), params.comment_ratio_max);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].code == "module ok; wire w; endmodule");
}

TEST_CASE("pipeline on the planted 20-file corpus keeps exactly 15") {
    const auto files = load_corpus20();
    REQUIRE(files.size() == 20);
    const CorpusParams params;
    const PipelineResult result = run_corpus_pipeline(files, params);
    CHECK(result.report.files == 20);
    CHECK(result.report.extracted == 20);
    CHECK(result.report.dropped_dedup == 0);
    CHECK(result.report.dropped_syntax == 3);
    CHECK(result.report.dropped_comments == 2);
    CHECK(result.report.kept == 15);
    REQUIRE(result.records.size() == 15);
    for (const auto& rec : result.records) {
        CHECK(rec.fragments.source() == rec.code);
        CHECK_FALSE(rec.fragments.fragments.empty());
    }
}

TEST_CASE("dataset emission round-trips records") {
    const auto files = load_corpus20();
    const PipelineResult result = run_corpus_pipeline(files, CorpusParams{});
    std::vector<std::string> codes;
    for (const auto& rec : result.records) codes.push_back(rec.code);
    const Vocab vocab = train_bpe(codes, 512);

    std::stringstream buffer;
    emit_dataset(result.records, vocab, buffer);
    const auto dataset = read_dataset(buffer);
    REQUIRE(dataset.size() == result.records.size());
    for (std::size_t i = 0; i < dataset.size(); i++) {
        CHECK(dataset[i].output == result.records[i].code);
        CHECK_FALSE(dataset[i].has_description);
        // strip FRAG and decode back to the exact module bytes
        TokenIds content;
        for (TokenId id : dataset[i].token_ids)
            if (id != kFragId) content.push_back(id);
        CHECK(decode(content, vocab) == dataset[i].output);
        std::size_t frags = 0;
        for (TokenId id : dataset[i].token_ids)
            if (id == kFragId) frags++;
        CHECK(frags == dataset[i].fragment_spans.size());
    }
}

TEST_CASE("descriptions attach by module name") {
    RawFile f{"d.v", "module with_desc; endmodule"};
    const PipelineResult result =
        run_corpus_pipeline({f}, CorpusParams{}, {{"with_desc", "a described module"}});
    REQUIRE(result.records.size() == 1);
    REQUIRE(result.records[0].description.has_value());
    CHECK(*result.records[0].description == "a described module");
}

TEST_CASE("pipeline reruns are byte-identical") {
    const auto files = load_corpus20();
    const CorpusParams params;
    const PipelineResult r1 = run_corpus_pipeline(files, params);
    const PipelineResult r2 = run_corpus_pipeline(files, params);
    std::vector<std::string> codes;
    for (const auto& rec : r1.records) codes.push_back(rec.code);
    const Vocab vocab = train_bpe(codes, 400);

    std::stringstream b1, b2;
    emit_dataset(r1.records, vocab, b1);
    emit_dataset(r2.records, vocab, b2);
    CHECK(b1.str() == b2.str());
    CHECK(r1.report.to_json_string() == r2.report.to_json_string());
}
