#pragma once

#include "paraprobe/providers.hpp"

#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace paraprobe {

struct HttpResponse {
    int status = 0;
    std::string body;
};

/// Transport seam for the HTTP provider; tests inject stubs or failing
/// transports here.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;

    /// POST a JSON body to `path` (relative to the configured base URL).
    /// Throws TransportError on connection-level failure.
    virtual HttpResponse post(const std::string& path, const std::string& body,
                              const std::vector<std::pair<std::string, std::string>>& headers) = 0;
};

/// Real transport over cpp-httplib. Requests on the shared connection are
/// serialized; `origin` is scheme://host[:port].
std::shared_ptr<HttpTransport> make_httplib_transport(const std::string& origin,
                                                      std::chrono::milliseconds timeout);

/// OpenAI-style chat-completion and embedding client with exponential-backoff
/// retries. Endpoint paths are {base_url}/chat/completions and
/// {base_url}/embeddings; the credential comes from the environment variable
/// named in the config and is never logged or persisted.
class HttpProvider : public GenerationProvider, public EmbeddingProvider {
public:
    explicit HttpProvider(ProviderConfig config, std::shared_ptr<HttpTransport> transport = nullptr);

    std::vector<std::string> paraphrase(const std::string& question, std::size_t k) override;
    std::string generate_answer(const std::string& question) override;
    std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override;
    std::string tag() const override;

private:
    HttpResponse post_with_retries(const std::string& path, const nlohmann::json& body);
    std::string chat_completion(const nlohmann::json& messages);
    std::vector<EmbeddingVector> embed_chunk(const std::vector<std::string>& texts);
    HttpTransport& transport();
    std::string api_key() const;

    ProviderConfig config_;
    std::shared_ptr<HttpTransport> transport_;
    std::string origin_;
    std::string path_prefix_;
    std::mutex transport_init_mutex_;
};

} // namespace paraprobe
