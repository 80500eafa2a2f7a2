#pragma once

#include "paraprobe/embedding.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace paraprobe {

enum class Origin : std::uint8_t { human = 0, machine = 1, student = 2 };

std::string origin_name(Origin origin);
Origin origin_from_name(const std::string& name);

struct VectorMeta {
    std::string doc_id;
    std::uint32_t sentence_index = 0;
    Origin origin = Origin::human;

    bool operator==(const VectorMeta&) const = default;
};

struct StoredVector {
    std::uint64_t vector_id = 0;
    EmbeddingVector embedding;
    VectorMeta metadata;
};

struct Match {
    std::uint64_t vector_id = 0;
    double score = 0.0; // cosine similarity in [-1, 1]
    VectorMeta metadata;
};

// Exact (brute-force) cosine store with a little-endian binary file format.
// Concurrency: any number of readers, writes serialized; a query sees either
// the pre-write or post-write state.
class VectorStore {
public:
    using Filter = std::function<bool(const VectorMeta&)>;

    VectorStore() = default;
    VectorStore(VectorStore&& other) noexcept;
    VectorStore& operator=(VectorStore&& other) noexcept;
    VectorStore(const VectorStore&) = delete;
    VectorStore& operator=(const VectorStore&) = delete;

    std::uint64_t upsert(EmbeddingVector embedding, VectorMeta metadata);
    std::vector<Match> top_k(const EmbeddingVector& query, std::size_t k,
                             const Filter& filter = nullptr) const;

    std::size_t size() const;
    std::size_t dimension() const; // 0 until the first insert
    StoredVector at(std::uint64_t vector_id) const;

    void save(const std::string& path) const;
    static VectorStore load(const std::string& path);

private:
    mutable std::shared_mutex mutex_;
    std::vector<StoredVector> vectors_;
    std::size_t dimension_ = 0;
};

} // namespace paraprobe
