// SPDX-License-Identifier: Apache-2.0

#include "vsd/ngram.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace vsd {

NGramMultiHead::NGramMultiHead(int order, int heads, double alpha, int vocab_size)
    : order_(order), heads_(heads), alpha_(alpha), vocab_size_(vocab_size) {
    if (order < 1) throw std::invalid_argument("n-gram order must be >= 1");
    if (heads < 0) throw std::invalid_argument("negative head count");
    if (vocab_size < 1) throw std::invalid_argument("empty vocabulary");
    tables_.resize(static_cast<std::size_t>(heads) + 1);
    for (auto& per_order : tables_) per_order.resize(static_cast<std::size_t>(order));
}

void NGramMultiHead::count(std::span<const TokenId> sequence) {
    const std::size_t len = sequence.size();
    for (int d = 0; d <= heads_; d++) {
        for (int o = 1; o <= order_; o++) {
            const std::size_t ctx_len = static_cast<std::size_t>(o - 1);
            Counts& table = tables_[static_cast<std::size_t>(d)][static_cast<std::size_t>(o - 1)];
            for (std::size_t j = ctx_len; j + static_cast<std::size_t>(d) < len; j++) {
                TokenIds ctx(sequence.begin() + static_cast<std::ptrdiff_t>(j - ctx_len),
                             sequence.begin() + static_cast<std::ptrdiff_t>(j));
                table[std::move(ctx)][sequence[j + static_cast<std::size_t>(d)]]++;
            }
        }
    }
}

Dist NGramMultiHead::distribution(std::span<const TokenId> context, int offset) const {
    const auto& per_order = tables_.at(static_cast<std::size_t>(offset));
    const int start = std::min<int>(order_, static_cast<int>(context.size()) + 1);
    for (int o = start; o >= 1; o--) {
        const std::size_t ctx_len = static_cast<std::size_t>(o - 1);
        const TokenIds key(context.end() - static_cast<std::ptrdiff_t>(ctx_len), context.end());
        const Counts& table = per_order[static_cast<std::size_t>(o - 1)];
        const auto it = table.find(key);
        if (it == table.end()) continue;
        std::uint64_t total = 0;
        for (const auto& [token, n] : it->second) total += n;
        if (total == 0) continue;
        Dist dist(static_cast<std::size_t>(vocab_size_),
                  alpha_ / (static_cast<double>(total) + alpha_ * vocab_size_));
        for (const auto& [token, n] : it->second)
            dist[static_cast<std::size_t>(token)] =
                (static_cast<double>(n) + alpha_) /
                (static_cast<double>(total) + alpha_ * vocab_size_);
        return dist;
    }
    return Dist(static_cast<std::size_t>(vocab_size_), 1.0 / vocab_size_);
}

void NGramMultiHead::sleep_latency() const {
    if (latency_ms_ > 0)
        std::this_thread::sleep_for(std::chrono::milliseconds(latency_ms_));
}

StepOutput NGramMultiHead::step(std::span<const TokenId> context) {
    sleep_latency();
    StepOutput out;
    out.base = distribution(context, 0);
    out.heads.reserve(static_cast<std::size_t>(heads_));
    for (int i = 1; i <= heads_; i++) out.heads.push_back(distribution(context, i));
    return out;
}

std::vector<Dist> NGramMultiHead::verify(std::span<const TokenId> context,
                                         std::span<const TokenId> proposed) {
    sleep_latency();
    std::vector<Dist> out;
    out.reserve(proposed.size());
    TokenIds extended(context.begin(), context.end());
    for (std::size_t j = 0; j < proposed.size(); j++) {
        out.push_back(distribution(extended, 0));
        extended.push_back(proposed[j]);
    }
    return out;
}

std::vector<std::vector<StepOutput>> NGramMultiHead::tree_step(
    std::span<const TokenId> context, const std::vector<TokenIds>& candidates) {
    sleep_latency();
    std::vector<std::vector<StepOutput>> out;
    out.reserve(candidates.size());
    TokenIds extended(context.begin(), context.end());
    for (const TokenIds& path : candidates) {
        std::vector<StepOutput> per_position;
        per_position.reserve(path.size());
        extended.resize(context.size());
        for (TokenId token : path) {
            extended.push_back(token);
            StepOutput node;
            node.base = distribution(extended, 0);
            for (int i = 1; i <= heads_; i++) node.heads.push_back(distribution(extended, i));
            per_position.push_back(std::move(node));
        }
        out.push_back(std::move(per_position));
    }
    return out;
}

std::unique_ptr<SpeculativeModel> NGramMultiHead::clone() const {
    return std::make_unique<NGramMultiHead>(*this);
}

NGramMultiHead train_ngram(const std::vector<TokenIds>& corpus, int order, int heads,
                           double alpha, int vocab_size) {
    if (corpus.empty()) throw std::invalid_argument("empty corpus");
    NGramMultiHead model(order, heads, alpha, vocab_size);
    for (const TokenIds& sequence : corpus) model.count(sequence);
    return model;
}

namespace {

template <typename T>
void put(std::ostream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    return value;
}

}  // namespace

void NGramMultiHead::save(const std::string& path, std::uint64_t vocab_hash) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model: " + path);
    nlohmann::ordered_json header;
    header["format"] = "vsd-ngram";
    header["version"] = 1;
    header["n"] = order_;
    header["heads"] = heads_;
    header["alpha"] = alpha_;
    header["vocab_size"] = vocab_size_;
    header["vocab_hash"] = vocab_hash;
    const std::string header_text = header.dump();
    const char magic[4] = {'V', 'S', 'D', 'M'};
    out.write(magic, 4);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(header_text.size()));
    out.write(header_text.data(), static_cast<std::streamsize>(header_text.size()));
    for (const auto& per_order : tables_) {
        for (const Counts& table : per_order) {
            put<std::uint64_t>(out, table.size());
            for (const auto& [ctx, row] : table) {
                for (TokenId id : ctx) put<TokenId>(out, id);
                put<std::uint32_t>(out, static_cast<std::uint32_t>(row.size()));
                for (const auto& [token, n] : row) {
                    put<TokenId>(out, token);
                    put<std::uint32_t>(out, n);
                }
            }
        }
    }
}

NGramMultiHead NGramMultiHead::load(const std::string& path, std::uint64_t* vocab_hash) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read model: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string_view(magic, 4) != "VSDM")
        throw std::runtime_error("not a vsd model file: " + path);
    const auto header_size = get<std::uint32_t>(in);
    std::string header_text(header_size, '\0');
    in.read(header_text.data(), header_size);
    const nlohmann::json header = nlohmann::json::parse(header_text);
    if (header.value("format", "") != "vsd-ngram" || header.value("version", 0) != 1)
        throw std::runtime_error("unsupported model format: " + path);
    NGramMultiHead model(header.at("n").get<int>(), header.at("heads").get<int>(),
                         header.at("alpha").get<double>(), header.at("vocab_size").get<int>());
    if (vocab_hash) *vocab_hash = header.at("vocab_hash").get<std::uint64_t>();
    for (auto& per_order : model.tables_) {
        for (Counts& table : per_order) {
            const std::size_t ctx_len =
                static_cast<std::size_t>(&table - per_order.data());
            const auto contexts = get<std::uint64_t>(in);
            for (std::uint64_t i = 0; i < contexts; i++) {
                TokenIds ctx(ctx_len);
                for (auto& id : ctx) id = get<TokenId>(in);
                const auto entries = get<std::uint32_t>(in);
                auto& row = table[std::move(ctx)];
                for (std::uint32_t e = 0; e < entries; e++) {
                    const TokenId token = get<TokenId>(in);
                    row[token] = get<std::uint32_t>(in);
                }
            }
        }
    }
    if (!in) throw std::runtime_error("truncated model file: " + path);
    return model;
}

std::uint64_t NGramMultiHead::table_hash() const {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; i++) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 1099511628211ull;
        }
    };
    mix(static_cast<std::uint64_t>(order_));
    mix(static_cast<std::uint64_t>(heads_));
    for (const auto& per_order : tables_) {
        for (const Counts& table : per_order) {
            mix(table.size());
            for (const auto& [ctx, row] : table) {
                for (TokenId id : ctx) mix(static_cast<std::uint64_t>(id));
                for (const auto& [token, n] : row) {
                    mix(static_cast<std::uint64_t>(token));
                    mix(n);
                }
            }
        }
    }
    return h;
}

}  // namespace vsd
