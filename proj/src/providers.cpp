#include "paraprobe/providers.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/http_provider.hpp"
#include "paraprobe/mock_provider.hpp"
#include "paraprobe/prompts.hpp"
#include "paraprobe/util.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

namespace paraprobe {

using nlohmann::json;

std::string_view operation_kind_name(OperationKind kind) {
    switch (kind) {
    case OperationKind::paraphrase: return "paraphrase";
    case OperationKind::generate: return "generate";
    case OperationKind::embed: return "embed";
    }
    return "unknown";
}

std::string cache_key(OperationKind kind, const json& payload) {
    json envelope{{"kind", operation_kind_name(kind)}, {"payload", payload}};
    // json objects keep keys sorted and dump() emits no whitespace, so the
    // encoding is canonical.
    const std::string canonical = envelope.dump();

    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(canonical.data(), canonical.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw Error("SHA-256 digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

// ---- DiskCache ----

DiskCache::DiskCache(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
}

std::optional<std::string> DiskCache::get(const std::string& key) const {
    const auto path = root_ / key;
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::string value((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) return std::nullopt;
    return value;
}

void DiskCache::put(const std::string& key, std::string_view value, const json& metadata) const {
    atomic_write_file(root_ / key, value);
    json sidecar = metadata;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    sidecar["created_at"] = stamp;
    atomic_write_file(root_ / (key + ".meta.json"), sidecar.dump(2) + "\n");
}

// ---- caching decorators ----

namespace {

json generation_payload(const ProviderConfig& config, const std::string& tag) {
    return json{{"tag", tag},
                {"model", config.model_name},
                {"temperature", config.temperature},
                {"top_p", config.top_p}};
}

} // namespace

CachedGenerationProvider::CachedGenerationProvider(std::shared_ptr<GenerationProvider> inner,
                                                   ProviderConfig config,
                                                   std::shared_ptr<DiskCache> cache)
    : inner_(std::move(inner)), config_(std::move(config)), cache_(std::move(cache)) {}

std::string CachedGenerationProvider::tag() const { return inner_->tag(); }

std::vector<std::string> CachedGenerationProvider::paraphrase(const std::string& question,
                                                              std::size_t k) {
    json payload = generation_payload(config_, tag());
    payload["prompt_version"] = kParaphrasePromptVersion;
    payload["k"] = k;
    payload["question"] = question;
    const auto key = cache_key(OperationKind::paraphrase, payload);

    if (auto hit = cache_->get(key)) {
        return json::parse(*hit).get<std::vector<std::string>>();
    }
    auto result = inner_->paraphrase(question, k);
    cache_->put(key, json(result).dump(),
                json{{"operation", "paraphrase"}, {"model", config_.model_name}, {"k", k}});
    return result;
}

std::string CachedGenerationProvider::generate_answer(const std::string& question) {
    json payload = generation_payload(config_, tag());
    payload["prompt_version"] = kAnswerPromptVersion;
    payload["question"] = question;
    const auto key = cache_key(OperationKind::generate, payload);

    if (auto hit = cache_->get(key)) return *hit;
    auto answer = inner_->generate_answer(question);
    cache_->put(key, answer, json{{"operation", "generate"}, {"model", config_.model_name}});
    return answer;
}

CachedEmbeddingProvider::CachedEmbeddingProvider(std::shared_ptr<EmbeddingProvider> inner,
                                                 ProviderConfig config,
                                                 std::shared_ptr<DiskCache> cache)
    : inner_(std::move(inner)), config_(std::move(config)), cache_(std::move(cache)) {}

std::string CachedEmbeddingProvider::tag() const { return inner_->tag(); }

std::vector<EmbeddingVector> CachedEmbeddingProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw ValidationError("embed requires a non-empty text list");

    std::vector<std::string> keys;
    keys.reserve(texts.size());
    std::vector<std::optional<EmbeddingVector>> results(texts.size());
    std::vector<std::size_t> miss_indices;
    std::vector<std::string> miss_texts;

    for (std::size_t i = 0; i < texts.size(); ++i) {
        json payload{{"tag", tag()},
                     {"model", config_.model_name},
                     {"dimension", config_.embedding_dimension},
                     {"text", texts[i]}};
        keys.push_back(cache_key(OperationKind::embed, payload));
        if (auto hit = cache_->get(keys[i])) {
            results[i] = make_embedding(json::parse(*hit).get<std::vector<float>>(), tag());
        } else {
            miss_indices.push_back(i);
            miss_texts.push_back(texts[i]);
        }
    }

    if (!miss_texts.empty()) {
        auto fetched = inner_->embed(miss_texts);
        for (std::size_t m = 0; m < miss_indices.size(); ++m) {
            const std::size_t i = miss_indices[m];
            cache_->put(keys[i], json(fetched[m].values).dump(),
                        json{{"operation", "embed"}, {"model", config_.model_name}});
            results[i] = std::move(fetched[m]);
        }
    }

    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

// ---- factory ----

ProviderSet make_providers(const ProviderConfig& config, std::shared_ptr<HttpTransport> transport,
                           std::shared_ptr<DiskCache> cache) {
    std::shared_ptr<GenerationProvider> generation;
    std::shared_ptr<EmbeddingProvider> embedding;

    if (config.kind == "mock") {
        auto mock = std::make_shared<MockProvider>(config);
        generation = mock;
        embedding = mock;
    } else if (config.kind == "http") {
        auto http = std::make_shared<HttpProvider>(config, std::move(transport));
        generation = http;
        embedding = http;
    } else {
        throw ValidationError("unknown provider kind: '" + config.kind + "'");
    }

    if (cache) {
        generation = std::make_shared<CachedGenerationProvider>(std::move(generation), config, cache);
        embedding = std::make_shared<CachedEmbeddingProvider>(std::move(embedding), config, cache);
    }
    return {std::move(generation), std::move(embedding)};
}

} // namespace paraprobe
