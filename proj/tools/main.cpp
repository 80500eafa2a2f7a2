#include "paraprobe/commands.hpp"
#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct ConfigOverrides {
    std::string config_path;
    std::optional<std::string> provider_kind;
    std::optional<std::string> base_url;
    std::optional<std::string> model_name;
    std::optional<std::size_t> embedding_dimension;
    std::optional<double> temperature;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> k;
    std::optional<bool> use_paraphrasing;
    std::optional<bool> include_original;
    std::optional<double> train_fraction;
    std::optional<std::uint64_t> split_seed;
    std::optional<double> sweep_step;
    std::optional<std::string> corpus;
    std::optional<std::string> cache_dir;
    std::optional<std::string> vector_store;
    std::optional<std::string> sentence_model;
    std::optional<std::string> document_model;
    std::optional<std::string> output_dir;
};

void add_config_options(CLI::App* sub, ConfigOverrides& o) {
    sub->add_option("--config", o.config_path, "Run config file (JSON)")
        ->check(CLI::ExistingFile);
    sub->add_option("--provider", o.provider_kind, "Provider kind for every role")
        ->check(CLI::IsMember({"mock", "http"}));
    sub->add_option("--base-url", o.base_url, "Provider base URL (http kind)");
    sub->add_option("--model", o.model_name, "Model name for every role");
    sub->add_option("--embedding-dimension", o.embedding_dimension, "Embedding vector dimension")
        ->check(CLI::PositiveNumber);
    sub->add_option("--temperature", o.temperature, "Sampling temperature")
        ->check(CLI::Range(0.0, 2.0));
    sub->add_option("--seed", o.seed, "Seed for every provider role");
    sub->add_option("--k", o.k, "Number of question paraphrases")->check(CLI::PositiveNumber);
    sub->add_flag_callback(
        "--paraphrasing", [&o] { o.use_paraphrasing = true; },
        "Paraphrase the question k ways");
    sub->add_flag_callback(
        "--no-paraphrasing", [&o] { o.use_paraphrasing = false; },
        "Use only the original question");
    sub->add_flag_callback(
        "--include-original", [&o] { o.include_original = true; },
        "Keep the original-question answer in the pool");
    sub->add_flag_callback(
        "--exclude-original", [&o] { o.include_original = false; },
        "Pool covers paraphrase answers only");
    sub->add_option("--train-fraction", o.train_fraction, "Train split fraction")
        ->check(CLI::Range(0.01, 0.99));
    sub->add_option("--split-seed", o.split_seed, "Train/test shuffle seed");
    sub->add_option("--sweep-step", o.sweep_step, "Threshold sweep step")
        ->check(CLI::Range(0.000001, 1.0));
    sub->add_option("--corpus", o.corpus, "Normalized corpus path");
    sub->add_option("--cache-dir", o.cache_dir, "Provider response cache directory");
    sub->add_option("--vector-store", o.vector_store, "Vector store path");
    sub->add_option("--sentence-model", o.sentence_model, "Sentence-level model path");
    sub->add_option("--document-model", o.document_model, "Document-level model path");
    sub->add_option("--output-dir", o.output_dir, "Directory for reports and stats");
}

paraprobe::RunConfig resolve_config(const ConfigOverrides& o) {
    paraprobe::RunConfig config;
    if (!o.config_path.empty()) config = paraprobe::load_run_config(o.config_path);

    auto for_each_provider = [&config](auto&& apply) {
        apply(config.paraphrase_provider);
        apply(config.generation_provider);
        apply(config.embedding_provider);
    };
    if (o.provider_kind) {
        for_each_provider([&](paraprobe::ProviderConfig& p) { p.kind = *o.provider_kind; });
    }
    if (o.base_url) {
        for_each_provider([&](paraprobe::ProviderConfig& p) { p.base_url = *o.base_url; });
    }
    if (o.model_name) {
        for_each_provider([&](paraprobe::ProviderConfig& p) { p.model_name = *o.model_name; });
    }
    if (o.embedding_dimension) config.embedding_provider.embedding_dimension = *o.embedding_dimension;
    if (o.temperature) {
        for_each_provider([&](paraprobe::ProviderConfig& p) { p.temperature = *o.temperature; });
    }
    if (o.seed) {
        for_each_provider([&](paraprobe::ProviderConfig& p) { p.seed = *o.seed; });
    }
    if (o.k) config.k = *o.k;
    if (o.use_paraphrasing) config.use_paraphrasing = *o.use_paraphrasing;
    if (o.include_original) config.include_original = *o.include_original;
    if (o.train_fraction) config.split.train_fraction = *o.train_fraction;
    if (o.split_seed) config.split.seed = *o.split_seed;
    if (o.sweep_step) config.sweep_step = *o.sweep_step;
    if (o.corpus) config.paths.corpus = *o.corpus;
    if (o.cache_dir) config.paths.cache_dir = *o.cache_dir;
    if (o.vector_store) config.paths.vector_store = *o.vector_store;
    if (o.sentence_model) config.paths.sentence_model = *o.sentence_model;
    if (o.document_model) config.paths.document_model = *o.document_model;
    if (o.output_dir) config.paths.output_dir = *o.output_dir;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Paraphrase-probe pipeline for detecting LLM-generated responses"};
    app.set_version_flag("--version", "paraprobe 0.1.0");
    app.require_subcommand(1);

    paraprobe::IngestOptions ingest_options;
    std::size_t ingest_limit = 0;
    auto* ingest = app.add_subcommand("ingest", "Normalize a raw dataset into the corpus format");
    ingest->add_option("--input", ingest_options.input_path, "Raw dataset file")
        ->required()
        ->check(CLI::ExistingFile);
    ingest->add_option("--format", ingest_options.format, "Input format")
        ->required()
        ->check(CLI::IsMember({"hc3", "wiki-intro"}));
    ingest->add_option("--output", ingest_options.output_path, "Normalized corpus path");
    auto* limit_option =
        ingest->add_option("--limit", ingest_limit, "Keep only the first N records")
            ->check(CLI::PositiveNumber);

    ConfigOverrides score_overrides;
    paraprobe::ScorePairsOptions score_options;
    auto* score = app.add_subcommand("score-pairs", "Score every comparison pair in the corpus");
    add_config_options(score, score_overrides);
    score->add_option("--output", score_options.output_path, "Score table path (CSV)");

    ConfigOverrides fit_overrides;
    paraprobe::FitOptions fit_options;
    std::string fit_level = "document";
    auto* fit = app.add_subcommand("fit", "Fit the discriminant and sweep its threshold");
    add_config_options(fit, fit_overrides);
    fit->add_option("--scores", fit_options.scores_path, "Score table from score-pairs")
        ->check(CLI::ExistingFile);
    fit->add_option("--level", fit_level, "Score level to fit")
        ->required()
        ->check(CLI::IsMember({"sentence", "document"}));
    fit->add_option("--positive", fit_options.positive_class,
                    "Positive class for precision/recall/F1")
        ->check(CLI::Range(0, 1));

    ConfigOverrides detect_overrides;
    paraprobe::DetectOptions detect_options;
    std::string question_file;
    auto* detect = app.add_subcommand("detect", "Analyze one student response");
    add_config_options(detect, detect_overrides);
    auto* question_option =
        detect->add_option("--question", detect_options.question, "Question text");
    auto* question_file_option =
        detect->add_option("--question-file", question_file, "File holding the question text")
            ->check(CLI::ExistingFile)
            ->excludes(question_option);
    detect->add_option("--response", detect_options.response_path, "Student response file")
        ->required()
        ->check(CLI::ExistingFile);

    paraprobe::ReportOptions report_options;
    auto* report = app.add_subcommand("report", "Render a detection report as a table");
    report->add_option("--input", report_options.report_path, "Report file (JSON)")
        ->required()
        ->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints help or the error message
        return code == 0 ? paraprobe::exit_code::ok : paraprobe::exit_code::usage;
    }

    try {
        if (app.got_subcommand(ingest)) {
            if (limit_option->count() > 0) ingest_options.limit = ingest_limit;
            paraprobe::cmd_ingest(ingest_options, std::cout);
        } else if (app.got_subcommand(score)) {
            score_options.config = resolve_config(score_overrides);
            paraprobe::cmd_score_pairs(score_options, std::cout, std::cerr);
        } else if (app.got_subcommand(fit)) {
            fit_options.config = resolve_config(fit_overrides);
            fit_options.level = paraprobe::level_from_name(fit_level);
            paraprobe::cmd_fit(fit_options, std::cout, std::cerr);
        } else if (app.got_subcommand(detect)) {
            if (question_option->count() == 0 && question_file_option->count() == 0) {
                std::cerr << "detect requires --question or --question-file\n";
                return paraprobe::exit_code::usage;
            }
            if (question_file_option->count() > 0) {
                detect_options.question =
                    std::string(paraprobe::trim(paraprobe::read_file(question_file)));
            }
            detect_options.config = resolve_config(detect_overrides);
            paraprobe::cmd_detect(detect_options, std::cout);
        } else if (app.got_subcommand(report)) {
            paraprobe::cmd_report(report_options, std::cout);
        }
        return paraprobe::exit_code::ok;
    } catch (const paraprobe::TransportError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return paraprobe::exit_code::provider;
    } catch (const paraprobe::ProviderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return paraprobe::exit_code::provider;
    } catch (const paraprobe::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return paraprobe::exit_code::data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return paraprobe::exit_code::data;
    }
}
