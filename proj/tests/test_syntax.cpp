// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "vsd/json_dump.hpp"
#include "vsd/lexer.hpp"
#include "vsd/parser.hpp"
#include "vsd/syntax.hpp"

using namespace vsd;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> all_fixture_files() {
    const std::string dir(VSD_FIXTURE_DIR);
    std::vector<std::string> files = {dir + "/counter.v"};
    for (const auto& entry : std::filesystem::directory_iterator(dir + "/corpus20"))
        files.push_back(entry.path().string());
    return files;
}

}  // namespace

TEST_CASE("keywords of a trivial module are significant") {
    const Ast ast = parse(lex("module m; endmodule"));
    const auto sig = extract_significant_tokens(ast);
    CHECK(sig.keywords.count("module") == 1);
    CHECK(sig.keywords.count("endmodule") == 1);
    CHECK(sig.includes_identifiers);
    CHECK(sig.includes_literals);
}

TEST_CASE("counter fixture yields posedge and <=") {
    const std::string src = read_file(std::string(VSD_FIXTURE_DIR) + "/counter.v");
    const auto sig = extract_significant_tokens(parse(lex(src)));
    CHECK(sig.keywords.count("posedge") == 1);
    CHECK(sig.operator_classes.count("<=") == 1);
}

TEST_CASE("mandatory constructs survive an empty supplemental override") {
    SignificantConfig cfg;
    cfg.supplemental.clear();
    const auto sig = extract_significant_tokens(parse(lex("module m; endmodule")), cfg);
    for (const auto& kw : mandatory_constructs()) CHECK(sig.keywords.count(kw) == 1);
}

TEST_CASE("segment cuts after every significant token") {
    const auto sig = default_significant_set();
    const FragmentedCode fc = segment("assign y = a;", sig);
    REQUIRE(fc.fragments.size() == 5);
    CHECK(fc.fragments[0].text == "assign ");
    CHECK(fc.fragments[1].text == "y ");
    CHECK(fc.fragments[2].text == "= ");
    CHECK(fc.fragments[3].text == "a");
    CHECK(fc.fragments[4].text == ";");
    CHECK(fc.fragments[0].kind == FragmentKind::Keyword);
    CHECK(fc.fragments[1].kind == FragmentKind::Identifier);
    CHECK(fc.fragments[2].kind == FragmentKind::Operator);
    CHECK(fc.fragments[4].kind == FragmentKind::Punctuation);
    CHECK(fc.source() == "assign y = a;");
}

TEST_CASE("single identifier is a single fragment") {
    const FragmentedCode fc = segment("x", default_significant_set());
    REQUIRE(fc.fragments.size() == 1);
    CHECK(fc.fragments[0].text == "x");
}

TEST_CASE("empty source yields no fragments") {
    CHECK(segment("", default_significant_set()).fragments.empty());
}

TEST_CASE("comment-only source is one trivia fragment") {
    const FragmentedCode fc = segment("// nothing here\n", default_significant_set());
    REQUIRE(fc.fragments.size() == 1);
    CHECK(fc.fragments[0].kind == FragmentKind::Trivia);
}

TEST_CASE("counter fragment count equals its significant token count") {
    const std::string src = read_file(std::string(VSD_FIXTURE_DIR) + "/counter.v");
    const auto sig = extract_significant_tokens(parse(lex(src)));
    const FragmentedCode fc = segment(src, sig);
    std::size_t significant = 0;
    for (const Token& t : lex(src))
        if (is_significant(t, sig)) significant++;
    CHECK(fc.fragments.size() == significant);
}

TEST_CASE("segmentation round-trips every fixture byte-for-byte") {
    for (const auto& path : all_fixture_files()) {
        const std::string src = read_file(path);
        const FragmentedCode fc = segment(src, default_significant_set());
        CHECK(fc.source() == src);
        for (const Fragment& f : fc.fragments) CHECK_FALSE(f.text.empty());
    }
}

TEST_CASE("no fragment holds two significant tokens") {
    const auto sig = default_significant_set();
    for (const auto& path : all_fixture_files()) {
        const FragmentedCode fc = segment(read_file(path), sig);
        for (const Fragment& f : fc.fragments) {
            std::size_t significant = 0;
            for (const Token& t : lex(f.text))
                if (is_significant(t, sig)) significant++;
            CHECK(significant <= 1);
        }
    }
}

TEST_CASE("json dumps carry the structure") {
    const std::string src = "module m; endmodule";
    const std::string ast_json = ast_to_json_string(parse(lex(src)));
    CHECK(ast_json.find("ModuleDecl") != std::string::npos);
    const std::string frag_json =
        fragments_to_json_string(segment(src, default_significant_set()));
    CHECK(frag_json.find("\"kind\": \"Keyword\"") != std::string::npos);
}
