#pragma once

#include "paraprobe/corpus.hpp"
#include "paraprobe/providers.hpp"

#include <nlohmann/json.hpp>

#include <string>

namespace paraprobe {

struct PathConfig {
    std::string corpus = "corpus.jsonl";
    std::string cache_dir = "cache";
    std::string vector_store = "vectors.ppvs";
    std::string sentence_model = "model_sentence.json";
    std::string document_model = "model_document.json";
    std::string output_dir = "out";
};

struct RunConfig {
    ProviderConfig paraphrase_provider;
    ProviderConfig generation_provider;
    ProviderConfig embedding_provider;
    std::size_t k = 3; // paraphrase count
    bool use_paraphrasing = true; // false = answer the original question only
    bool include_original = true; // keep the original-question answer in the pool
    SplitSpec split;
    double sweep_step = 0.01;
    PathConfig paths;
};

nlohmann::json provider_config_to_json(const ProviderConfig& config);
ProviderConfig provider_config_from_json(const nlohmann::json& doc);

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& doc);

RunConfig load_run_config(const std::string& path);
void save_run_config(const RunConfig& config, const std::string& path);

} // namespace paraprobe
