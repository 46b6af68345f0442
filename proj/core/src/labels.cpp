// SPDX-License-Identifier: Apache-2.0

#include "vsd/labels.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace vsd {

namespace {

void check_args(const TokenIds& base_labels, int heads) {
    if (heads < 1) throw std::invalid_argument("head count must be >= 1");
    if (base_labels.empty()) throw std::invalid_argument("base label row must be nonempty");
}

}  // namespace

LabelMatrix build_labels_naive(const TokenIds& base_labels, int heads) {
    check_args(base_labels, heads);
    const std::size_t seq = base_labels.size();
    LabelMatrix m(heads, seq);

    for (std::size_t s = 0; s < seq; s++) {
        // column entries before masking: row i holds L0[s+i] or PAD
        int last_frag = -1;
        for (int i = 0; i <= heads; i++) {
            const std::size_t src = s + static_cast<std::size_t>(i);
            const TokenId value = src < seq ? base_labels[src] : kPadId;
            m.at(static_cast<std::size_t>(i), s) = value;
            if (value == kFragId) last_frag = i;
        }
        const int keep_upto = last_frag < 0 ? 0 : last_frag;  // base row is never masked
        for (int i = keep_upto + 1; i <= heads; i++)
            m.at(static_cast<std::size_t>(i), s) = kIgnoreId;
    }
    return m;
}

LabelMatrix build_labels_parallel(const TokenIds& base_labels, int heads) {
    check_args(base_labels, heads);
    const std::size_t seq = base_labels.size();
    LabelMatrix m(heads, seq);

    for (int i = 0; i <= heads; i++) {
        TokenId* row = m.row(static_cast<std::size_t>(i));
        const std::size_t shift = static_cast<std::size_t>(i);
        const std::size_t copied = shift < seq ? seq - shift : 0;
        if (copied > 0) std::memcpy(row, base_labels.data() + shift, copied * sizeof(TokenId));
        for (std::size_t s = copied; s < seq; s++) row[s] = kPadId;
    }

    // Running maximum of the row index holding [FRAG], clamped at 0 so that
    // frag-free columns keep the base row and mask every head row.
    std::vector<std::int32_t> last_frag(seq, 0);
    for (int i = 0; i <= heads; i++) {
        const TokenId* row = m.row(static_cast<std::size_t>(i));
        for (std::size_t s = 0; s < seq; s++)
            last_frag[s] = row[s] == kFragId ? i : last_frag[s];
    }

    for (int i = 1; i <= heads; i++) {
        TokenId* row = m.row(static_cast<std::size_t>(i));
        for (std::size_t s = 0; s < seq; s++)
            row[s] = i > last_frag[s] ? kIgnoreId : row[s];
    }
    return m;
}

void LabelMatrix::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write label matrix: " + path);
    const char magic[4] = {'V', 'S', 'D', 'L'};
    out.write(magic, 4);
    const std::uint32_t version = 1;
    const std::uint32_t h = static_cast<std::uint32_t>(heads_);
    const std::uint64_t s = seq_len_;
    const std::uint8_t id_width = sizeof(TokenId);
    out.write(reinterpret_cast<const char*>(&version), sizeof(version));
    out.write(reinterpret_cast<const char*>(&h), sizeof(h));
    out.write(reinterpret_cast<const char*>(&s), sizeof(s));
    out.write(reinterpret_cast<const char*>(&id_width), sizeof(id_width));
    out.write(reinterpret_cast<const char*>(data_.data()),
              static_cast<std::streamsize>(data_.size() * sizeof(TokenId)));
}

LabelMatrix LabelMatrix::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read label matrix: " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "VSDL", 4) != 0)
        throw std::runtime_error("not a label matrix file: " + path);
    std::uint32_t version = 0, h = 0;
    std::uint64_t s = 0;
    std::uint8_t id_width = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    in.read(reinterpret_cast<char*>(&h), sizeof(h));
    in.read(reinterpret_cast<char*>(&s), sizeof(s));
    in.read(reinterpret_cast<char*>(&id_width), sizeof(id_width));
    if (!in || version != 1 || id_width != sizeof(TokenId))
        throw std::runtime_error("unsupported label matrix format: " + path);
    LabelMatrix m(static_cast<int>(h), static_cast<std::size_t>(s));
    in.read(reinterpret_cast<char*>(m.data_.data()),
            static_cast<std::streamsize>(m.data_.size() * sizeof(TokenId)));
    if (!in) throw std::runtime_error("truncated label matrix file: " + path);
    return m;
}

std::string LabelMatrix::to_json_string() const {
    nlohmann::ordered_json j;
    j["heads"] = heads_;
    j["seq_len"] = seq_len_;
    j["special"] = {{"frag", kFragId}, {"pad", kPadId}, {"ignore", kIgnoreId}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < this->rows(); i++) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t s = 0; s < seq_len_; s++) row.push_back(at(i, s));
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

}  // namespace vsd
