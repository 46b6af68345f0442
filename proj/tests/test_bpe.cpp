// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "vsd/bpe.hpp"
#include "vsd/lexer.hpp"
#include "vsd/parser.hpp"

using namespace vsd;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("one merge budget on 'aaaa' merges (a,a)") {
    const Vocab v = train_bpe({"aaaa"}, 256 + kNumSpecial + 1);
    REQUIRE(v.merge_count() == 1);
    const auto merge = v.merges()[0];
    CHECK(merge.first == Vocab::byte_token('a'));
    CHECK(merge.second == Vocab::byte_token('a'));
    CHECK(v.token_bytes(256 + kNumSpecial) == "aa");
}

TEST_CASE("zero merge budget gives a byte-level vocabulary") {
    const Vocab v = train_bpe({"anything"}, 256 + kNumSpecial);
    CHECK(v.merge_count() == 0);
    CHECK(v.size() == 256 + kNumSpecial);
}

TEST_CASE("training is deterministic") {
    const std::vector<std::string> corpus = {"wire w = a & b;", "wire q = a & c;"};
    const Vocab v1 = train_bpe(corpus, 300);
    const Vocab v2 = train_bpe(corpus, 300);
    REQUIRE(v1.merge_count() == v2.merge_count());
    for (int i = 0; i < v1.merge_count(); i++) {
        CHECK(v1.merges()[i] == v2.merges()[i]);
    }
}

TEST_CASE("empty corpus and undersized vocabulary are rejected") {
    CHECK_THROWS_AS(train_bpe({}, 300), std::invalid_argument);
    CHECK_THROWS_AS(train_bpe({"x"}, 100), std::invalid_argument);
}

TEST_CASE("encode/decode round-trips") {
    const Vocab v = train_bpe({"assign y = a & b;", "assign z = a | b;"}, 280);
    CHECK(encode("", v).empty());
    CHECK(decode(encode("assign", v), v) == "assign");

    std::mt19937_64 rng(7);
    std::string blob(1024, '\0');
    for (auto& c : blob) c = static_cast<char>(rng() & 0xff);
    CHECK(decode(encode(blob, v), v) == blob);
}

TEST_CASE("specials decode to nothing") {
    const Vocab v;
    CHECK(decode(TokenIds{}, v).empty());
    CHECK(decode(TokenIds{kFragId, kFragId}, v).empty());
    CHECK(decode(TokenIds{kBosId, Vocab::byte_token('x'), kEosId}, v) == "x");
}

TEST_CASE("fragment encoding is isolated and marked") {
    const Vocab v = train_bpe({"abab"}, 256 + kNumSpecial + 1);  // merges (a,b)
    FragmentedCode fc;
    fc.fragments.push_back({"a", FragmentKind::Identifier, 0, 1});
    fc.fragments.push_back({"b", FragmentKind::Identifier, 1, 2});
    const TokenSequence seq = encode_fragmented(fc, v);
    // no subword may span the fragment boundary, so "ab" stays two bytes
    const TokenIds expected = {Vocab::byte_token('a'), kFragId, Vocab::byte_token('b'), kFragId};
    CHECK(seq.ids == expected);
    CHECK(seq.fragment_index == std::vector<std::int32_t>{0, 0, 1, 1});
}

TEST_CASE("counter fixture: FRAG count, provenance, and strip round-trip") {
    const std::string src = read_file(std::string(VSD_FIXTURE_DIR) + "/counter.v");
    const auto sig = extract_significant_tokens(parse(lex(src)));
    const FragmentedCode fc = segment(src, sig);
    const Vocab v = train_bpe({src}, 320);
    const TokenSequence seq = encode_fragmented(fc, v);

    std::size_t frags = 0;
    for (TokenId id : seq.ids)
        if (id == kFragId) frags++;
    CHECK(frags == fc.fragments.size());

    CHECK(decode(seq.ids, v) == src);  // FRAG ids decode to ""
    REQUIRE(seq.fragment_index.size() == seq.ids.size());
    CHECK(seq.fragment_index.back() == static_cast<std::int32_t>(fc.fragments.size()) - 1);
}

TEST_CASE("vocabulary persists through JSON") {
    const Vocab v = train_bpe({"assign y = a & b;"}, 290);
    const std::string path = (std::filesystem::temp_directory_path() / "vsd_vocab_test.json").string();
    v.save(path);
    const Vocab loaded = Vocab::load(path);
    CHECK(loaded.merge_count() == v.merge_count());
    CHECK(loaded.hash() == v.hash());
    CHECK(decode(encode("assign y", loaded), loaded) == "assign y");
    std::filesystem::remove(path);
}
