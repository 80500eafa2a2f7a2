#pragma once

#include "paraprobe/embedding.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace paraprobe {

/// Settings for one provider role. `kind` selects the implementation:
/// "mock" (deterministic, offline) or "http" (OpenAI-style endpoints).
/// The API key is read from the environment variable named by `api_key_env`
/// and is never written to disk or logs.
struct ProviderConfig {
    std::string kind = "mock";
    std::string base_url;
    std::string model_name = "mock-model";
    std::string api_key_env = "PARAPROBE_API_KEY";
    double temperature = 0.7;
    double top_p = 1.0;
    std::chrono::milliseconds timeout{30000};
    int max_retries = 3;
    std::chrono::milliseconds retry_backoff{250};
    std::uint64_t seed = 0;
    std::size_t embedding_dimension = 256;
    std::size_t batch_limit = 64;
    int max_concurrency = 4;
};

class GenerationProvider {
public:
    virtual ~GenerationProvider() = default;

    /// Exactly k paraphrases, each non-empty and different from the question.
    virtual std::vector<std::string> paraphrase(const std::string& question, std::size_t k) = 0;

    /// Non-empty answer to the question.
    virtual std::string generate_answer(const std::string& question) = 0;

    /// Identifies (provider, model), e.g. "mock:mock-model".
    virtual std::string tag() const = 0;
};

class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;

    /// One vector per input text, order preserved, uniform dimension.
    virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;

    virtual std::string tag() const = 0;
};

enum class OperationKind { paraphrase, generate, embed };

std::string_view operation_kind_name(OperationKind kind);

/// 256-bit content hash (hex) of the canonicalized request payload. Object
/// keys are sorted and the encoding carries no whitespace, so logically equal
/// requests hash equally and any field change produces a new key.
std::string cache_key(OperationKind kind, const nlohmann::json& payload);

/// Content-addressed response cache: one value file per key plus a small
/// metadata sidecar. Hits return the stored payload byte-identically.
class DiskCache {
public:
    explicit DiskCache(std::filesystem::path root);

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, std::string_view value, const nlohmann::json& metadata) const;

    const std::filesystem::path& root() const { return root_; }

private:
    std::filesystem::path root_;
};

/// Wraps a generation provider with key-addressed response caching.
class CachedGenerationProvider : public GenerationProvider {
public:
    CachedGenerationProvider(std::shared_ptr<GenerationProvider> inner, ProviderConfig config,
                             std::shared_ptr<DiskCache> cache);

    std::vector<std::string> paraphrase(const std::string& question, std::size_t k) override;
    std::string generate_answer(const std::string& question) override;
    std::string tag() const override;

private:
    std::shared_ptr<GenerationProvider> inner_;
    ProviderConfig config_;
    std::shared_ptr<DiskCache> cache_;
};

/// Wraps an embedding provider with per-text caching, so repeated sentences
/// are fetched once.
class CachedEmbeddingProvider : public EmbeddingProvider {
public:
    CachedEmbeddingProvider(std::shared_ptr<EmbeddingProvider> inner, ProviderConfig config,
                            std::shared_ptr<DiskCache> cache);

    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    std::string tag() const override;

private:
    std::shared_ptr<EmbeddingProvider> inner_;
    ProviderConfig config_;
    std::shared_ptr<DiskCache> cache_;
};

class HttpTransport;

struct ProviderSet {
    std::shared_ptr<GenerationProvider> generation;
    std::shared_ptr<EmbeddingProvider> embedding;
};

/// Build providers for one config. A non-null transport is only used by the
/// "http" kind; the mock never touches it.
ProviderSet make_providers(const ProviderConfig& config,
                           std::shared_ptr<HttpTransport> transport = nullptr,
                           std::shared_ptr<DiskCache> cache = nullptr);

} // namespace paraprobe
