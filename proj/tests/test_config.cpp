#include "paraprobe/config.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

#include <doctest.h>

#include <filesystem>

using namespace paraprobe;
using nlohmann::json;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("paraprobe_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

RunConfig nondefault_config() {
    RunConfig config;
    config.paraphrase_provider.kind = "http";
    config.paraphrase_provider.base_url = "https://api.example.test/v1";
    config.paraphrase_provider.model_name = "para-model";
    config.paraphrase_provider.api_key_env = "MY_KEY";
    config.paraphrase_provider.temperature = 0.9;
    config.paraphrase_provider.top_p = 0.95;
    config.paraphrase_provider.timeout = std::chrono::milliseconds(1234);
    config.paraphrase_provider.max_retries = 7;
    config.paraphrase_provider.retry_backoff = std::chrono::milliseconds(50);
    config.paraphrase_provider.seed = 99;
    config.paraphrase_provider.embedding_dimension = 512;
    config.paraphrase_provider.batch_limit = 16;
    config.paraphrase_provider.max_concurrency = 2;
    config.generation_provider.model_name = "gen-model";
    config.embedding_provider.model_name = "embed-model";
    config.k = 5;
    config.use_paraphrasing = false;
    config.include_original = false;
    config.split.train_fraction = 0.7;
    config.split.seed = 21;
    config.sweep_step = 0.05;
    config.paths.corpus = "data/corpus.jsonl";
    config.paths.cache_dir = "data/cache";
    config.paths.vector_store = "data/vectors.ppvs";
    config.paths.sentence_model = "models/sentence.json";
    config.paths.document_model = "models/document.json";
    config.paths.output_dir = "results";
    return config;
}

void check_equal(const ProviderConfig& a, const ProviderConfig& b) {
    CHECK(a.kind == b.kind);
    CHECK(a.base_url == b.base_url);
    CHECK(a.model_name == b.model_name);
    CHECK(a.api_key_env == b.api_key_env);
    CHECK(a.temperature == b.temperature);
    CHECK(a.top_p == b.top_p);
    CHECK(a.timeout == b.timeout);
    CHECK(a.max_retries == b.max_retries);
    CHECK(a.retry_backoff == b.retry_backoff);
    CHECK(a.seed == b.seed);
    CHECK(a.embedding_dimension == b.embedding_dimension);
    CHECK(a.batch_limit == b.batch_limit);
    CHECK(a.max_concurrency == b.max_concurrency);
}

void check_equal(const RunConfig& a, const RunConfig& b) {
    check_equal(a.paraphrase_provider, b.paraphrase_provider);
    check_equal(a.generation_provider, b.generation_provider);
    check_equal(a.embedding_provider, b.embedding_provider);
    CHECK(a.k == b.k);
    CHECK(a.use_paraphrasing == b.use_paraphrasing);
    CHECK(a.include_original == b.include_original);
    CHECK(a.split.train_fraction == b.split.train_fraction);
    CHECK(a.split.seed == b.split.seed);
    CHECK(a.sweep_step == b.sweep_step);
    CHECK(a.paths.corpus == b.paths.corpus);
    CHECK(a.paths.cache_dir == b.paths.cache_dir);
    CHECK(a.paths.vector_store == b.paths.vector_store);
    CHECK(a.paths.sentence_model == b.paths.sentence_model);
    CHECK(a.paths.document_model == b.paths.document_model);
    CHECK(a.paths.output_dir == b.paths.output_dir);
}

} // namespace

TEST_CASE("provider config JSON round trip is lossless") {
    const auto original = nondefault_config().paraphrase_provider;
    check_equal(provider_config_from_json(provider_config_to_json(original)), original);
}

TEST_CASE("run config JSON round trip is lossless") {
    const auto original = nondefault_config();
    check_equal(run_config_from_json(run_config_to_json(original)), original);

    const RunConfig defaults;
    check_equal(run_config_from_json(run_config_to_json(defaults)), defaults);
}

TEST_CASE("run config file round trip") {
    const auto dir = temp_dir("config_rt");
    const auto path = (dir / "run.json").string();
    const auto original = nondefault_config();
    save_run_config(original, path);
    check_equal(load_run_config(path), original);
    std::filesystem::remove_all(dir);
}

TEST_CASE("absent fields fall back to defaults") {
    const auto config = run_config_from_json(json{{"schema_version", 1}});
    const RunConfig defaults;
    check_equal(config, defaults);

    const auto partial = run_config_from_json(
        json{{"schema_version", 1},
             {"k", 4},
             {"providers", json{{"embedding", json{{"model_name", "embedder"}}}}}});
    CHECK(partial.k == 4);
    CHECK(partial.embedding_provider.model_name == "embedder");
    CHECK(partial.generation_provider.model_name == defaults.generation_provider.model_name);
}

TEST_CASE("run config validation") {
    CHECK_THROWS_AS(run_config_from_json(json::array()), ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"schema_version", 99}}), ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"schema_version", 1}, {"k", 0}}), ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"schema_version", 1}, {"sweep_step", 0.0}}),
                    ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"schema_version", 1}, {"sweep_step", 1.5}}),
                    ValidationError);
    CHECK_THROWS_AS(run_config_from_json(
                        json{{"schema_version", 1}, {"split", json{{"train_fraction", 1.0}}}}),
                    ValidationError);
    CHECK_THROWS_AS(run_config_from_json(json{{"schema_version", 1}, {"k", "three"}}),
                    ValidationError);
}

TEST_CASE("provider config validation") {
    CHECK_THROWS_AS(provider_config_from_json(json{{"kind", "telepathy"}}), ValidationError);
    CHECK_THROWS_AS(provider_config_from_json(json{{"embedding_dimension", 0}}), ValidationError);
    CHECK_THROWS_AS(provider_config_from_json(json{{"max_retries", 0}}), ValidationError);
    CHECK_THROWS_AS(provider_config_from_json(json{{"max_concurrency", 0}}), ValidationError);
    CHECK_THROWS_AS(provider_config_from_json(json{{"batch_limit", 0}}), ValidationError);
    CHECK_THROWS_AS(provider_config_from_json(json{{"temperature", "warm"}}), ValidationError);
    CHECK_THROWS_AS(provider_config_from_json(json::array()), ValidationError);
}

TEST_CASE("config files with broken JSON raise a parse error") {
    const auto dir = temp_dir("config_bad");
    const auto path = (dir / "bad.json").string();
    atomic_write_file(path, "{ not json at all");
    CHECK_THROWS_AS(load_run_config(path), ParseError);
    CHECK_THROWS_AS(load_run_config((dir / "missing.json").string()), IoError);
    std::filesystem::remove_all(dir);
}
