#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace paraprobe {

/// A sentence embedding. `provider_tag` identifies the (provider, model) pair
/// that produced it. Zero vectors are rejected at construction.
struct EmbeddingVector {
    std::vector<float> values;
    std::string provider_tag;

    std::size_t dimension() const { return values.size(); }
};

/// Validating constructor: throws ValidationError on an empty or zero-norm vector.
EmbeddingVector make_embedding(std::vector<float> values, std::string provider_tag);

double embedding_norm(const EmbeddingVector& v);

} // namespace paraprobe
