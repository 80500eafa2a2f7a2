#pragma once

#include "paraprobe/providers.hpp"

namespace paraprobe {

/// Deterministic offline provider. Every output is a pure function of the
/// input text, the configured seed, and (for embeddings) the dimension, so
/// full pipeline runs are reproducible byte for byte without network access.
///
/// Embeddings are feature-hashed bags of words: each lowercase token hashes
/// to an index with a seeded +/-1 sign; vectors are left unnormalized.
/// Token overlap therefore raises cosine similarity monotonically, which is
/// the only semantic property the pipeline relies on offline.
class MockProvider : public GenerationProvider, public EmbeddingProvider {
public:
    explicit MockProvider(ProviderConfig config);

    std::vector<std::string> paraphrase(const std::string& question, std::size_t k) override;
    std::string generate_answer(const std::string& question) override;
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    std::string tag() const override;

    /// Embedding of a single text; exposed for property tests.
    EmbeddingVector embed_one(const std::string& text) const;

private:
    ProviderConfig config_;
};

} // namespace paraprobe
