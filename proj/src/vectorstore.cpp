#include "paraprobe/vectorstore.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/similarity.hpp"
#include "paraprobe/util.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <mutex>

namespace paraprobe {

namespace {

constexpr char kMagic[4] = {'P', 'P', 'V', 'S'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v & 0xffffffffULL));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

void put_f32(std::string& out, float v) {
    put_u32(out, std::bit_cast<std::uint32_t>(v));
}

void put_string(std::string& out, const std::string& s) {
    put_u32(out, static_cast<std::uint32_t>(s.size()));
    out.append(s);
}

class Cursor {
public:
    Cursor(const std::string& data, const std::string& path) : data_(data), path_(path) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 3; i >= 0; --i) {
            v = (v << 8) | static_cast<unsigned char>(data_[pos_ + static_cast<std::size_t>(i)]);
        }
        pos_ += 4;
        return v;
    }

    std::uint64_t u64() {
        const std::uint64_t lo = u32();
        const std::uint64_t hi = u32();
        return lo | (hi << 32);
    }

    float f32() { return std::bit_cast<float>(u32()); }

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }

    std::string string() {
        const std::uint32_t len = u32();
        need(len);
        std::string s = data_.substr(pos_, len);
        pos_ += len;
        return s;
    }

    bool exhausted() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) {
        if (pos_ + n > data_.size()) {
            throw FormatError("vector store file '" + path_ + "' is truncated");
        }
    }

    const std::string& data_;
    const std::string& path_;
    std::size_t pos_ = 0;
};

} // namespace

std::string origin_name(Origin origin) {
    switch (origin) {
        case Origin::human: return "human";
        case Origin::machine: return "machine";
        case Origin::student: return "student";
    }
    throw ValidationError("unknown origin value");
}

Origin origin_from_name(const std::string& name) {
    if (name == "human") return Origin::human;
    if (name == "machine") return Origin::machine;
    if (name == "student") return Origin::student;
    throw ValidationError("unknown origin name: '" + name + "'");
}

VectorStore::VectorStore(VectorStore&& other) noexcept {
    std::unique_lock lock(other.mutex_);
    vectors_ = std::move(other.vectors_);
    dimension_ = other.dimension_;
    other.dimension_ = 0;
}

VectorStore& VectorStore::operator=(VectorStore&& other) noexcept {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        vectors_ = std::move(other.vectors_);
        dimension_ = other.dimension_;
        other.dimension_ = 0;
    }
    return *this;
}

std::uint64_t VectorStore::upsert(EmbeddingVector embedding, VectorMeta metadata) {
    std::unique_lock lock(mutex_);
    if (dimension_ == 0) {
        dimension_ = embedding.dimension();
    } else if (embedding.dimension() != dimension_) {
        throw DimensionError("vector dimension " + std::to_string(embedding.dimension()) +
                             " does not match store dimension " + std::to_string(dimension_));
    }
    const auto id = static_cast<std::uint64_t>(vectors_.size());
    vectors_.push_back(StoredVector{id, std::move(embedding), std::move(metadata)});
    return id;
}

std::vector<Match> VectorStore::top_k(const EmbeddingVector& query, std::size_t k,
                                      const Filter& filter) const {
    if (k == 0) throw ValidationError("top_k requires k >= 1");
    std::shared_lock lock(mutex_);
    if (vectors_.empty()) throw ValidationError("top_k on an empty vector store");
    if (query.dimension() != dimension_) {
        throw DimensionError("query dimension " + std::to_string(query.dimension()) +
                             " does not match store dimension " + std::to_string(dimension_));
    }

    std::vector<Match> matches;
    for (const auto& stored : vectors_) {
        if (filter && !filter(stored.metadata)) continue;
        matches.push_back(Match{stored.vector_id, cosine(query, stored.embedding),
                                stored.metadata});
    }
    std::stable_sort(matches.begin(), matches.end(), [](const Match& a, const Match& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.vector_id < b.vector_id;
    });
    if (matches.size() > k) matches.resize(k);
    return matches;
}

std::size_t VectorStore::size() const {
    std::shared_lock lock(mutex_);
    return vectors_.size();
}

std::size_t VectorStore::dimension() const {
    std::shared_lock lock(mutex_);
    return dimension_;
}

StoredVector VectorStore::at(std::uint64_t vector_id) const {
    std::shared_lock lock(mutex_);
    if (vector_id >= vectors_.size()) {
        throw ValidationError("vector id " + std::to_string(vector_id) + " not in store");
    }
    return vectors_[static_cast<std::size_t>(vector_id)];
}

void VectorStore::save(const std::string& path) const {
    std::shared_lock lock(mutex_);
    std::string out;
    out.append(kMagic, sizeof(kMagic));
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(dimension_));
    put_u64(out, vectors_.size());
    for (const auto& stored : vectors_) {
        for (const float v : stored.embedding.values) put_f32(out, v);
    }
    for (const auto& stored : vectors_) {
        put_string(out, stored.metadata.doc_id);
        put_u32(out, stored.metadata.sentence_index);
        out.push_back(static_cast<char>(stored.metadata.origin));
        put_string(out, stored.embedding.provider_tag);
    }
    atomic_write_file(path, out);
}

VectorStore VectorStore::load(const std::string& path) {
    const std::string data = read_file(path);
    if (data.size() < sizeof(kMagic) || std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0) {
        throw FormatError("'" + path + "' is not a vector store file (bad magic)");
    }
    std::string body = data.substr(sizeof(kMagic));
    Cursor cursor(body, path);
    const std::uint32_t version = cursor.u32();
    if (version != kVersion) {
        throw FormatError("vector store file '" + path + "' has unsupported version " +
                          std::to_string(version));
    }
    const std::uint32_t dimension = cursor.u32();
    const std::uint64_t count = cursor.u64();
    if (count > 0 && dimension == 0) {
        throw FormatError("vector store file '" + path + "' declares zero dimension");
    }

    VectorStore store;
    store.dimension_ = dimension;
    store.vectors_.reserve(static_cast<std::size_t>(count));
    std::vector<std::vector<float>> raw(static_cast<std::size_t>(count));
    for (auto& values : raw) {
        values.resize(dimension);
        for (auto& v : values) v = cursor.f32();
    }
    for (std::uint64_t id = 0; id < count; ++id) {
        VectorMeta meta;
        meta.doc_id = cursor.string();
        meta.sentence_index = cursor.u32();
        const std::uint8_t origin = cursor.u8();
        if (origin > 2) {
            throw FormatError("vector store file '" + path + "' has an invalid origin byte");
        }
        meta.origin = static_cast<Origin>(origin);
        EmbeddingVector embedding;
        embedding.values = std::move(raw[static_cast<std::size_t>(id)]);
        embedding.provider_tag = cursor.string();
        store.vectors_.push_back(StoredVector{id, std::move(embedding), std::move(meta)});
    }
    if (!cursor.exhausted()) {
        throw FormatError("vector store file '" + path + "' has trailing bytes");
    }
    return store;
}

} // namespace paraprobe
