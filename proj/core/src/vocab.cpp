// SPDX-License-Identifier: Apache-2.0

#include "vsd/vocab.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace vsd {

Vocab::Vocab() {
    table_.resize(kNumSpecial);  // specials decode to ""
    for (int b = 0; b < 256; b++) table_.push_back(std::string(1, static_cast<char>(b)));
}

const std::string& Vocab::token_bytes(TokenId id) const {
    return table_.at(static_cast<std::size_t>(id));
}

TokenId Vocab::add_merge(TokenId left, TokenId right) {
    if (is_special(left) || is_special(right))
        throw std::invalid_argument("merge over special token");
    const TokenId id = size();
    merges_.emplace_back(left, right);
    table_.push_back(token_bytes(left) + token_bytes(right));
    return id;
}

std::string Vocab::to_json_string() const {
    nlohmann::ordered_json j;
    j["format"] = "vsd-vocab";
    j["version"] = 1;
    j["special"] = {{"frag", kFragId}, {"pad", kPadId}, {"ignore", kIgnoreId},
                    {"bos", kBosId},   {"eos", kEosId}};
    nlohmann::ordered_json merges = nlohmann::ordered_json::array();
    for (const auto& [l, r] : merges_) merges.push_back({l, r});
    j["merges"] = std::move(merges);
    return j.dump(2) + "\n";
}

Vocab Vocab::from_json_string(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.value("format", "") != "vsd-vocab")
        throw std::runtime_error("not a vsd vocabulary file");
    Vocab v;
    for (const auto& m : j.at("merges"))
        v.add_merge(m.at(0).get<TokenId>(), m.at(1).get<TokenId>());
    return v;
}

void Vocab::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write vocabulary: " + path);
    out << to_json_string();
}

Vocab Vocab::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read vocabulary: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return from_json_string(text);
}

std::uint64_t Vocab::hash() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; i++) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(merges_.size()));
    for (const auto& [l, r] : merges_) {
        mix(static_cast<std::uint64_t>(l));
        mix(static_cast<std::uint64_t>(r));
    }
    return h;
}

}  // namespace vsd
