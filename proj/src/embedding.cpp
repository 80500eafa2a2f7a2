#include "paraprobe/embedding.hpp"

#include "paraprobe/error.hpp"

#include <cmath>

namespace paraprobe {

double embedding_norm(const EmbeddingVector& v) {
    double sum = 0.0;
    for (float x : v.values) sum += static_cast<double>(x) * static_cast<double>(x);
    return std::sqrt(sum);
}

EmbeddingVector make_embedding(std::vector<float> values, std::string provider_tag) {
    if (values.empty()) throw ValidationError("embedding must have positive dimension");
    EmbeddingVector v{std::move(values), std::move(provider_tag)};
    if (embedding_norm(v) <= 0.0) throw ValidationError("zero-norm embedding rejected");
    return v;
}

} // namespace paraprobe
