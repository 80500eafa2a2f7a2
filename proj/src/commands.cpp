#include "paraprobe/commands.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/prompts.hpp"
#include "paraprobe/segmenter.hpp"
#include "paraprobe/similarity.hpp"
#include "paraprobe/util.hpp"
#include "paraprobe/vectorstore.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>

namespace paraprobe {

namespace {

std::string fixed4(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

std::shared_ptr<DiskCache> open_cache(const RunConfig& config) {
    if (config.paths.cache_dir.empty()) return nullptr;
    return std::make_shared<DiskCache>(config.paths.cache_dir);
}

std::vector<std::string> sentence_texts(const std::vector<Sentence>& sentences) {
    std::vector<std::string> texts;
    texts.reserve(sentences.size());
    for (const auto& s : sentences) texts.push_back(s.text);
    return texts;
}

const char* pair_name(PairLabel label) { return label == PairLabel::hm ? "hm" : "mm"; }

constexpr const char* kScoreHeader = "level,record_id,pair,label,sentence_index,n_sentences,score";

} // namespace

void cmd_ingest(const IngestOptions& options, std::ostream& out) {
    std::vector<QARecord> records;
    if (options.format == "hc3") {
        records = load_hc3(options.input_path, options.limit);
    } else if (options.format == "wiki-intro") {
        records = load_wiki_intro(options.input_path, options.limit);
    } else {
        throw ValidationError("unknown input format '" + options.format + "'");
    }

    save_corpus(records, options.output_path);

    std::size_t hm = 0, mm = 0, skipped = 0;
    for (const auto& record : records) {
        const auto pairs = build_pairs(record);
        if (pairs.empty()) ++skipped;
        for (const auto& pair : pairs) {
            (pair.label == PairLabel::hm ? hm : mm) += 1;
        }
    }
    out << records.size() << " records, " << hm << " HM pairs, " << mm << " MM pairs\n";
    if (skipped > 0) out << skipped << " records skipped (no usable pair)\n";
    out << "corpus written to " << options.output_path << "\n";
}

void cmd_score_pairs(const ScorePairsOptions& options, std::ostream& out, std::ostream& err) {
    const auto& config = options.config;
    const auto records = load_corpus(config.paths.corpus);

    std::vector<ComparisonPair> pairs;
    for (const auto& record : records) {
        const auto record_pairs = build_pairs(record);
        pairs.insert(pairs.end(), record_pairs.begin(), record_pairs.end());
    }
    if (pairs.empty()) throw ValidationError("corpus produced no comparison pairs");

    auto embedder = make_providers(config.embedding_provider, nullptr, open_cache(config)).embedding;

    std::ostringstream csv;
    csv << kScoreHeader << "\n";
    std::size_t scored = 0, sentence_rows = 0;
    std::vector<std::string> failures;
    for (const auto& pair : pairs) {
        try {
            const auto side_a = segment(pair.record_id + ":a", pair.side_a);
            const auto side_b = segment(pair.record_id + ":b", pair.side_b);
            if (side_a.empty() || side_b.empty()) {
                throw ValidationError("a side of the pair has no sentences");
            }
            const auto emb_a = embedder->embed(sentence_texts(side_a));
            const auto emb_b = embedder->embed(sentence_texts(side_b));
            const auto matches = best_matches(side_a, emb_a, side_b, emb_b);
            const auto doc = document_score(matches);

            const std::string base = csv_escape(pair.record_id) + "," + pair_name(pair.label) +
                                     "," + std::to_string(static_cast<int>(pair.label));
            for (std::size_t i = 0; i < matches.size(); ++i) {
                csv << "sentence," << base << "," << i << "," << matches.size() << ","
                    << format_double(matches[i].score) << "\n";
            }
            csv << "document," << base << ",," << doc.n_sentences << ","
                << format_double(doc.value) << "\n";
            ++scored;
            sentence_rows += matches.size();
        } catch (const Error& e) {
            const std::string what =
                pair.record_id + " (" + pair_name(pair.label) + "): " + e.what();
            failures.push_back(what);
            err << "warning: skipping pair " << what << "\n";
        }
    }
    if (scored == 0) throw ValidationError("every pair failed; no scores written");

    atomic_write_file(options.output_path, csv.str());
    out << "scored " << scored << " of " << pairs.size() << " pairs (" << sentence_rows
        << " sentence rows) -> " << options.output_path << "\n";
    if (!failures.empty()) {
        out << failures.size() << " pairs failed:\n";
        for (const auto& failure : failures) out << "  - " << failure << "\n";
    }
}

void cmd_fit(const FitOptions& options, std::ostream& out, std::ostream& err) {
    const auto& config = options.config;

    std::istringstream in(read_file(options.scores_path));
    CsvReader reader(in);
    const auto header = reader.next_row();
    if (!header ||
        *header != std::vector<std::string>{"level", "record_id", "pair", "label",
                                            "sentence_index", "n_sentences", "score"}) {
        throw ParseError("'" + options.scores_path + "' does not look like a score table");
    }

    std::vector<double> scores;
    std::vector<int> labels;
    const std::string wanted = level_name(options.level);
    std::size_t line = 1;
    while (auto row = reader.next_row()) {
        ++line;
        if (row->size() != 7) {
            throw ParseError(options.scores_path + ":" + std::to_string(line) +
                             ": expected 7 fields, got " + std::to_string(row->size()));
        }
        if ((*row)[0] != wanted) continue;
        const std::string& label_text = (*row)[3];
        if (label_text != "0" && label_text != "1") {
            throw ParseError(options.scores_path + ":" + std::to_string(line) +
                             ": label must be 0 or 1, got '" + label_text + "'");
        }
        scores.push_back(parse_double((*row)[6]));
        labels.push_back(label_text == "1" ? 1 : 0);
    }
    if (scores.empty()) {
        throw ValidationError("no " + wanted + "-level rows in '" + options.scores_path + "'");
    }

    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    seeded_shuffle(order, config.split.seed);
    const auto train_count = static_cast<std::size_t>(
        std::ceil(static_cast<double>(order.size()) * config.split.train_fraction));
    if (train_count >= order.size()) {
        throw ValidationError("train fraction leaves no test rows (n=" +
                              std::to_string(order.size()) + ")");
    }

    std::vector<double> train_scores, test_scores;
    std::vector<int> train_labels, test_labels;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto src = order[i];
        if (i < train_count) {
            train_scores.push_back(scores[src]);
            train_labels.push_back(labels[src]);
        } else {
            test_scores.push_back(scores[src]);
            test_labels.push_back(labels[src]);
        }
    }

    LdaModel model = fit_lda(train_scores, train_labels, options.level);
    const auto sweep = sweep_threshold(model, train_scores, train_labels, config.sweep_step);
    model.provenance = options.scores_path + " level=" + wanted + " n=" +
                       std::to_string(scores.size()) + " train=" + std::to_string(train_count) +
                       " seed=" + std::to_string(config.split.seed);

    std::vector<int> predictions;
    predictions.reserve(test_scores.size());
    for (const double s : test_scores) predictions.push_back(classify(model, s));
    const auto cm = confusion(test_labels, predictions);
    const auto m = metrics(cm, options.positive_class);

    const std::string model_path =
        options.level == Level::sentence ? config.paths.sentence_model : config.paths.document_model;
    save_model(model, model_path);

    std::filesystem::create_directories(config.paths.output_dir);
    const std::filesystem::path out_dir(config.paths.output_dir);

    const auto [stats0, stats1] = class_stats_by_label(scores, labels);
    {
        std::ostringstream csv;
        csv << "label,mean,std_dev,n\n";
        csv << "0," << format_double(stats0.mean) << "," << format_double(stats0.std_dev) << ","
            << stats0.n << "\n";
        csv << "1," << format_double(stats1.mean) << "," << format_double(stats1.std_dev) << ","
            << stats1.n << "\n";
        atomic_write_file(out_dir / "class_stats.csv", csv.str());
    }

    for (const int label : {0, 1}) {
        std::vector<double> class_scores;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (labels[i] == label) class_scores.push_back(scores[i]);
        }
        const auto path = out_dir / ("kde_class" + std::to_string(label) + ".csv");
        try {
            const auto curve = kde(class_scores);
            std::ostringstream csv;
            csv << "grid,density,bandwidth\n";
            for (std::size_t i = 0; i < curve.grid.size(); ++i) {
                csv << format_double(curve.grid[i]) << "," << format_double(curve.density[i])
                    << "," << format_double(curve.bandwidth) << "\n";
            }
            atomic_write_file(path, csv.str());
        } catch (const ValidationError& e) {
            err << "warning: skipping " << path.string() << ": " << e.what() << "\n";
        }
    }

    {
        std::ostringstream csv;
        csv << "level,n_train,n_test,threshold,train_accuracy,test_accuracy,tn,fp,fn,tp,"
               "positive_class,precision,recall,f1\n";
        csv << wanted << "," << train_count << "," << test_scores.size() << ","
            << format_double(model.threshold) << "," << format_double(sweep.accuracy) << ","
            << format_double(m.accuracy) << "," << cm.tn << "," << cm.fp << "," << cm.fn << ","
            << cm.tp << "," << options.positive_class << "," << format_double(m.precision) << ","
            << format_double(m.recall) << "," << format_double(m.f1) << "\n";
        atomic_write_file(out_dir / "evaluation.csv", csv.str());
    }

    out << "fit " << wanted << " level: threshold " << fixed4(model.threshold)
        << ", train accuracy " << fixed4(sweep.accuracy) << ", test accuracy "
        << fixed4(m.accuracy) << " (train " << train_count << ", test " << test_scores.size()
        << ")\n";
    out << "model written to " << model_path << "\n";
}

DetectionReport cmd_detect(const DetectOptions& options, std::ostream& out) {
    const auto& config = options.config;
    if (trim(options.question).empty()) throw ValidationError("question text is empty");
    const std::string response = read_file(options.response_path);
    if (trim(response).empty()) {
        throw ValidationError("student response file '" + options.response_path + "' is empty");
    }

    const LdaModel sentence_model = load_model(config.paths.sentence_model);
    const LdaModel document_model = load_model(config.paths.document_model);
    if (sentence_model.level != Level::sentence) {
        throw ValidationError("'" + config.paths.sentence_model + "' is not a sentence-level model");
    }
    if (document_model.level != Level::document) {
        throw ValidationError("'" + config.paths.document_model + "' is not a document-level model");
    }

    const auto cache = open_cache(config);
    auto paraphraser = make_providers(config.paraphrase_provider, nullptr, cache).generation;
    auto generator = make_providers(config.generation_provider, nullptr, cache).generation;
    auto embedder = make_providers(config.embedding_provider, nullptr, cache).embedding;

    std::vector<std::pair<std::string, std::string>> variants; // (provenance, question text)
    if (!config.use_paraphrasing || config.include_original) {
        variants.emplace_back("original", options.question);
    }
    if (config.use_paraphrasing) {
        const auto paraphrases = paraphraser->paraphrase(options.question, config.k);
        for (std::size_t i = 0; i < paraphrases.size(); ++i) {
            variants.emplace_back("paraphrase:" + std::to_string(i + 1), paraphrases[i]);
        }
    }

    DetectionReport report;
    report.question = options.question;
    report.student_response = response;

    std::vector<Sentence> pool;
    std::vector<std::size_t> pool_answer; // generated-answer index per pool sentence
    for (std::size_t a = 0; a < variants.size(); ++a) {
        const std::string answer = generator->generate_answer(variants[a].second);
        report.generated_answers.push_back(
            GeneratedAnswer{variants[a].first, variants[a].second, answer});
        for (auto& sentence : segment("answer:" + std::to_string(a), answer)) {
            pool.push_back(std::move(sentence));
            pool_answer.push_back(a);
        }
    }
    if (pool.empty()) throw ValidationError("generated answers contained no sentences");

    const auto student_sentences = segment("student", response);
    if (student_sentences.empty()) {
        throw ValidationError("student response contains no sentences");
    }

    const auto pool_embeddings = embedder->embed(sentence_texts(pool));
    const auto student_embeddings = embedder->embed(sentence_texts(student_sentences));

    VectorStore store;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        store.upsert(pool_embeddings[i],
                     VectorMeta{pool[i].doc_id, static_cast<std::uint32_t>(pool[i].index),
                                Origin::machine});
    }
    for (std::size_t i = 0; i < student_sentences.size(); ++i) {
        store.upsert(student_embeddings[i],
                     VectorMeta{"student", static_cast<std::uint32_t>(i), Origin::student});
    }

    std::vector<BestMatch> matches;
    for (std::size_t i = 0; i < student_sentences.size(); ++i) {
        const auto top = store.top_k(student_embeddings[i], 1, [](const VectorMeta& meta) {
            return meta.origin == Origin::machine;
        });
        const auto& match = top.front();
        // Pool vectors were inserted first, so vector ids index the pool.
        const auto pool_index = static_cast<std::size_t>(match.vector_id);
        matches.push_back(
            BestMatch{student_sentences[i], pool[pool_index], pool_index, match.score});

        SentenceRow row;
        row.student_sentence = student_sentences[i].text;
        row.matched_sentence = pool[pool_index].text;
        row.matched_answer_index = pool_answer[pool_index];
        row.matched_sentence_index = pool[pool_index].index;
        row.score = match.score;
        row.posterior = round_sig(posterior(sentence_model, match.score), 12);
        report.sentences.push_back(std::move(row));
    }

    const auto doc = document_score(matches);
    report.document.score = doc.value;
    report.document.posterior = round_sig(posterior(document_model, doc.value), 12);
    report.document.label = classify(document_model, doc.value);
    report.document.n_sentences = doc.n_sentences;

    report.fingerprint.paraphrase_model = config.use_paraphrasing ? paraphraser->tag() : "";
    report.fingerprint.generation_model = generator->tag();
    report.fingerprint.embedding_model = embedder->tag();
    report.fingerprint.temperature = config.generation_provider.temperature;
    report.fingerprint.top_p = config.generation_provider.top_p;
    report.fingerprint.paraphrase_prompt_version = std::string(kParaphrasePromptVersion);
    report.fingerprint.answer_prompt_version = std::string(kAnswerPromptVersion);
    report.fingerprint.k = config.k;
    report.fingerprint.use_paraphrasing = config.use_paraphrasing;
    report.fingerprint.include_original = config.include_original;
    report.fingerprint.sentence_threshold = sentence_model.threshold;
    report.fingerprint.document_threshold = document_model.threshold;
    report.fingerprint.seed = config.generation_provider.seed;

    std::filesystem::create_directories(config.paths.output_dir);
    const std::filesystem::path out_dir(config.paths.output_dir);
    save_report(report, (out_dir / "report.json").string());
    atomic_write_file(out_dir / "report.txt", render_report_table(report));
    if (!config.paths.vector_store.empty()) store.save(config.paths.vector_store);

    out << "document score " << fixed4(report.document.score) << ", posterior "
        << fixed4(report.document.posterior) << ", label " << report.document.label << "\n";
    out << "report written to " << (out_dir / "report.json").string() << "\n";
    return report;
}

void cmd_report(const ReportOptions& options, std::ostream& out) {
    out << render_report_table(load_report(options.report_path));
}

} // namespace paraprobe
