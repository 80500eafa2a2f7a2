#include "paraprobe/http_provider.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/prompts.hpp"
#include "paraprobe/util.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <algorithm>
#include <cstdlib>
#include <future>
#include <thread>

namespace paraprobe {

using nlohmann::json;

namespace {

class HttplibTransport : public HttpTransport {
public:
    HttplibTransport(const std::string& origin, std::chrono::milliseconds timeout)
        : client_(origin) {
        const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(timeout);
        const auto micros =
            std::chrono::duration_cast<std::chrono::microseconds>(timeout - seconds);
        client_.set_connection_timeout(static_cast<time_t>(seconds.count()),
                                       static_cast<time_t>(micros.count()));
        client_.set_read_timeout(static_cast<time_t>(seconds.count()),
                                 static_cast<time_t>(micros.count()));
        client_.set_write_timeout(static_cast<time_t>(seconds.count()),
                                  static_cast<time_t>(micros.count()));
    }

    HttpResponse post(const std::string& path, const std::string& body,
                      const std::vector<std::pair<std::string, std::string>>& headers) override {
        httplib::Headers hl_headers;
        std::string content_type = "application/json";
        for (const auto& [name, value] : headers) {
            if (name == "Content-Type") {
                content_type = value;
            } else {
                hl_headers.emplace(name, value);
            }
        }
        std::lock_guard<std::mutex> lock(mutex_); // one connection, serialized requests
        auto result = client_.Post(path, hl_headers, body, content_type);
        if (!result) {
            throw TransportError("HTTP request to " + path +
                                 " failed: " + httplib::to_string(result.error()));
        }
        return {result->status, result->body};
    }

private:
    httplib::Client client_;
    std::mutex mutex_;
};

void split_base_url(const std::string& base_url, std::string& origin, std::string& prefix) {
    const auto scheme_end = base_url.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("base_url must include a scheme: '" + base_url + "'");
    }
    const auto path_start = base_url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        origin = base_url;
        prefix.clear();
    } else {
        origin = base_url.substr(0, path_start);
        prefix = base_url.substr(path_start);
        while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    }
}

// Strip "1." / "1)" / "-" style list markers and wrapping quotes.
std::string strip_list_marker(std::string_view line) {
    auto s = trim(line);
    std::size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > 0 && i < s.size() && (s[i] == '.' || s[i] == ')')) {
        s = trim(s.substr(i + 1));
    } else if (!s.empty() && (s[0] == '-' || s[0] == '*')) {
        s = trim(s.substr(1));
    }
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
        s = trim(s.substr(1, s.size() - 2));
    }
    return std::string(s);
}

} // namespace

std::shared_ptr<HttpTransport> make_httplib_transport(const std::string& origin,
                                                      std::chrono::milliseconds timeout) {
    return std::make_shared<HttplibTransport>(origin, timeout);
}

HttpProvider::HttpProvider(ProviderConfig config, std::shared_ptr<HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
    split_base_url(config_.base_url, origin_, path_prefix_);
}

std::string HttpProvider::tag() const { return "http:" + config_.model_name; }

HttpTransport& HttpProvider::transport() {
    std::lock_guard<std::mutex> lock(transport_init_mutex_);
    if (!transport_) transport_ = make_httplib_transport(origin_, config_.timeout);
    return *transport_;
}

std::string HttpProvider::api_key() const {
    const char* value = std::getenv(config_.api_key_env.c_str());
    if (value == nullptr || *value == '\0') {
        throw ProviderError("environment variable '" + config_.api_key_env +
                            "' is not set; it must hold the API key");
    }
    return value;
}

HttpResponse HttpProvider::post_with_retries(const std::string& path, const json& body) {
    const std::string full_path = path_prefix_ + path;
    const std::vector<std::pair<std::string, std::string>> headers = {
        {"Authorization", "Bearer " + api_key()},
        {"Content-Type", "application/json"},
    };
    const int attempts = std::max(1, config_.max_retries);
    std::string last_error;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(config_.retry_backoff * (1 << (attempt - 1)));
        }
        try {
            auto response = transport().post(full_path, body.dump(), headers);
            if (response.status == 200) return response;
            if (response.status == 429 || response.status >= 500) {
                last_error = "status " + std::to_string(response.status);
                continue; // transient, retry
            }
            throw ProviderError("request to " + full_path + " rejected with status " +
                                std::to_string(response.status) + ": " + response.body);
        } catch (const TransportError& e) {
            last_error = e.what();
        }
    }
    throw TransportError("request to " + full_path + " failed after " +
                         std::to_string(attempts) + " attempts: " + last_error);
}

std::string HttpProvider::chat_completion(const json& messages) {
    const json body{{"model", config_.model_name},
                    {"messages", messages},
                    {"temperature", config_.temperature},
                    {"top_p", config_.top_p}};
    const auto response = post_with_retries("/chat/completions", body);
    json parsed;
    try {
        parsed = json::parse(response.body);
    } catch (const json::parse_error& e) {
        throw ProviderError(std::string("completion response is not valid JSON: ") + e.what());
    }
    if (!parsed.contains("choices") || !parsed["choices"].is_array() || parsed["choices"].empty()) {
        throw ProviderError("completion response has no choices");
    }
    const auto& message = parsed["choices"][0]["message"];
    if (!message.contains("content") || !message["content"].is_string()) {
        throw ProviderError("completion response has no message content");
    }
    return message["content"].get<std::string>();
}

std::vector<std::string> HttpProvider::paraphrase(const std::string& question, std::size_t k) {
    if (trim(question).empty()) throw ValidationError("paraphrase requires a non-empty question");
    if (k < 1) throw ValidationError("paraphrase count k must be >= 1");

    const json messages = json::array({
        json{{"role", "user"}, {"content", render_paraphrase_prompt(question, k)}},
    });
    const std::string content = chat_completion(messages);

    std::vector<std::string> candidates;
    std::size_t pos = 0;
    while (pos <= content.size()) {
        const auto newline = content.find('\n', pos);
        const auto line = content.substr(pos, newline == std::string::npos ? std::string::npos
                                                                           : newline - pos);
        auto text = strip_list_marker(line);
        if (!text.empty() && text != question &&
            std::find(candidates.begin(), candidates.end(), text) == candidates.end()) {
            candidates.push_back(std::move(text));
        }
        if (newline == std::string::npos) break;
        pos = newline + 1;
    }

    if (candidates.size() < k) {
        throw DegradedOutputError("provider returned " + std::to_string(candidates.size()) +
                                      " distinct paraphrases, requested " + std::to_string(k),
                                  candidates);
    }
    candidates.resize(k);
    return candidates;
}

std::string HttpProvider::generate_answer(const std::string& question) {
    if (trim(question).empty()) throw ValidationError("generate_answer requires a non-empty question");

    const json messages = json::array({
        json{{"role", "system"}, {"content", std::string(kAnswerSystemPrompt)}},
        json{{"role", "user"}, {"content", question}},
    });
    const std::string content = chat_completion(messages);
    if (trim(content).empty()) throw ProviderError("provider returned an empty completion");
    return content;
}

std::vector<EmbeddingVector> HttpProvider::embed_chunk(const std::vector<std::string>& texts) {
    const json body{{"model", config_.model_name}, {"input", texts}};
    const auto response = post_with_retries("/embeddings", body);
    json parsed;
    try {
        parsed = json::parse(response.body);
    } catch (const json::parse_error& e) {
        throw ProviderError(std::string("embedding response is not valid JSON: ") + e.what());
    }
    if (!parsed.contains("data") || !parsed["data"].is_array() ||
        parsed["data"].size() != texts.size()) {
        throw ProviderError("embedding response item count does not match the request");
    }

    std::vector<EmbeddingVector> out(texts.size());
    std::vector<bool> filled(texts.size(), false);
    for (const auto& item : parsed["data"]) {
        if (!item.contains("index") || !item.contains("embedding")) {
            throw ProviderError("embedding response item missing index or embedding");
        }
        const auto index = item["index"].get<std::size_t>();
        if (index >= texts.size() || filled[index]) {
            throw ProviderError("embedding response has an invalid or duplicate index");
        }
        out[index] = make_embedding(item["embedding"].get<std::vector<float>>(), tag());
        filled[index] = true;
    }
    return out;
}

std::vector<EmbeddingVector> HttpProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw ValidationError("embed requires a non-empty text list");
    for (const auto& text : texts) {
        if (text.empty()) throw ValidationError("embed requires non-empty texts");
    }

    const std::size_t batch = std::max<std::size_t>(1, config_.batch_limit);
    std::vector<std::vector<std::string>> chunks;
    for (std::size_t i = 0; i < texts.size(); i += batch) {
        chunks.emplace_back(texts.begin() + static_cast<std::ptrdiff_t>(i),
                            texts.begin() + static_cast<std::ptrdiff_t>(std::min(i + batch, texts.size())));
    }

    // Dispatch up to max_concurrency chunks at a time, reassembling in order.
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    const std::size_t window = static_cast<std::size_t>(std::max(1, config_.max_concurrency));
    for (std::size_t begin = 0; begin < chunks.size(); begin += window) {
        const std::size_t end = std::min(begin + window, chunks.size());
        std::vector<std::future<std::vector<EmbeddingVector>>> futures;
        for (std::size_t c = begin; c < end; ++c) {
            futures.push_back(std::async(std::launch::async,
                                         [this, &chunks, c] { return embed_chunk(chunks[c]); }));
        }
        for (auto& f : futures) {
            auto part = f.get();
            out.insert(out.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        }
    }

    for (const auto& v : out) {
        if (v.dimension() != out.front().dimension()) {
            throw ProviderError("embedding batch returned mixed dimensions");
        }
    }
    return out;
}

} // namespace paraprobe
