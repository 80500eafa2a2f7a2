#include "paraprobe/config.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

namespace paraprobe {

using nlohmann::json;

namespace {

constexpr int kConfigSchemaVersion = 1;

} // namespace

json provider_config_to_json(const ProviderConfig& config) {
    return json{{"kind", config.kind},
                {"base_url", config.base_url},
                {"model_name", config.model_name},
                {"api_key_env", config.api_key_env},
                {"temperature", config.temperature},
                {"top_p", config.top_p},
                {"timeout_ms", config.timeout.count()},
                {"max_retries", config.max_retries},
                {"retry_backoff_ms", config.retry_backoff.count()},
                {"seed", config.seed},
                {"embedding_dimension", config.embedding_dimension},
                {"batch_limit", config.batch_limit},
                {"max_concurrency", config.max_concurrency}};
}

ProviderConfig provider_config_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("provider config must be an object");
    ProviderConfig config;
    try {
        config.kind = doc.value("kind", config.kind);
        config.base_url = doc.value("base_url", config.base_url);
        config.model_name = doc.value("model_name", config.model_name);
        config.api_key_env = doc.value("api_key_env", config.api_key_env);
        config.temperature = doc.value("temperature", config.temperature);
        config.top_p = doc.value("top_p", config.top_p);
        config.timeout = std::chrono::milliseconds(doc.value("timeout_ms", config.timeout.count()));
        config.max_retries = doc.value("max_retries", config.max_retries);
        config.retry_backoff =
            std::chrono::milliseconds(doc.value("retry_backoff_ms", config.retry_backoff.count()));
        config.seed = doc.value("seed", config.seed);
        config.embedding_dimension = doc.value("embedding_dimension", config.embedding_dimension);
        config.batch_limit = doc.value("batch_limit", config.batch_limit);
        config.max_concurrency = doc.value("max_concurrency", config.max_concurrency);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("provider config field has a wrong type: ") + e.what());
    }
    if (config.kind != "mock" && config.kind != "http") {
        throw ValidationError("provider kind must be 'mock' or 'http', got '" + config.kind + "'");
    }
    if (config.embedding_dimension == 0) {
        throw ValidationError("embedding_dimension must be positive");
    }
    if (config.max_retries < 1) throw ValidationError("max_retries must be >= 1");
    if (config.max_concurrency < 1) throw ValidationError("max_concurrency must be >= 1");
    if (config.batch_limit == 0) throw ValidationError("batch_limit must be >= 1");
    return config;
}

json run_config_to_json(const RunConfig& config) {
    return json{{"schema_version", kConfigSchemaVersion},
                {"providers",
                 json{{"paraphrase", provider_config_to_json(config.paraphrase_provider)},
                      {"generation", provider_config_to_json(config.generation_provider)},
                      {"embedding", provider_config_to_json(config.embedding_provider)}}},
                {"k", config.k},
                {"use_paraphrasing", config.use_paraphrasing},
                {"include_original", config.include_original},
                {"split", json{{"train_fraction", config.split.train_fraction},
                               {"seed", config.split.seed}}},
                {"sweep_step", config.sweep_step},
                {"paths", json{{"corpus", config.paths.corpus},
                               {"cache_dir", config.paths.cache_dir},
                               {"vector_store", config.paths.vector_store},
                               {"sentence_model", config.paths.sentence_model},
                               {"document_model", config.paths.document_model},
                               {"output_dir", config.paths.output_dir}}}};
}

RunConfig run_config_from_json(const json& doc) {
    if (!doc.is_object()) throw ValidationError("run config must be a JSON object");
    if (doc.value("schema_version", -1) != kConfigSchemaVersion) {
        throw ValidationError("run config has an unsupported schema version");
    }
    RunConfig config;
    try {
        if (doc.contains("providers")) {
            const auto& providers = doc.at("providers");
            if (providers.contains("paraphrase")) {
                config.paraphrase_provider = provider_config_from_json(providers.at("paraphrase"));
            }
            if (providers.contains("generation")) {
                config.generation_provider = provider_config_from_json(providers.at("generation"));
            }
            if (providers.contains("embedding")) {
                config.embedding_provider = provider_config_from_json(providers.at("embedding"));
            }
        }
        config.k = doc.value("k", config.k);
        config.use_paraphrasing = doc.value("use_paraphrasing", config.use_paraphrasing);
        config.include_original = doc.value("include_original", config.include_original);
        if (doc.contains("split")) {
            const auto& split = doc.at("split");
            config.split.train_fraction = split.value("train_fraction", config.split.train_fraction);
            config.split.seed = split.value("seed", config.split.seed);
        }
        config.sweep_step = doc.value("sweep_step", config.sweep_step);
        if (doc.contains("paths")) {
            const auto& paths = doc.at("paths");
            config.paths.corpus = paths.value("corpus", config.paths.corpus);
            config.paths.cache_dir = paths.value("cache_dir", config.paths.cache_dir);
            config.paths.vector_store = paths.value("vector_store", config.paths.vector_store);
            config.paths.sentence_model = paths.value("sentence_model", config.paths.sentence_model);
            config.paths.document_model = paths.value("document_model", config.paths.document_model);
            config.paths.output_dir = paths.value("output_dir", config.paths.output_dir);
        }
    } catch (const json::exception& e) {
        throw ValidationError(std::string("run config field has a wrong type: ") + e.what());
    }
    if (config.k < 1) throw ValidationError("paraphrase count k must be >= 1");
    if (config.sweep_step <= 0.0 || config.sweep_step > 1.0) {
        throw ValidationError("sweep_step must be in (0, 1]");
    }
    if (config.split.train_fraction <= 0.0 || config.split.train_fraction >= 1.0) {
        throw ValidationError("split.train_fraction must be in (0, 1)");
    }
    return config;
}

RunConfig load_run_config(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ParseError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return run_config_from_json(doc);
}

void save_run_config(const RunConfig& config, const std::string& path) {
    atomic_write_file(path, run_config_to_json(config).dump(2) + "\n");
}

} // namespace paraprobe
