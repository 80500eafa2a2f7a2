#include "paraprobe/report.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace paraprobe {

using nlohmann::json;

namespace {

constexpr int kReportSchemaVersion = 1;
constexpr std::size_t kTextColumnWidth = 40;

std::vector<std::string> wrap_text(const std::string& text, std::size_t width) {
    std::vector<std::string> lines;
    std::string current;
    std::istringstream words(text);
    std::string word;
    while (words >> word) {
        while (word.size() > width) { // hard-split words longer than a column
            if (!current.empty()) {
                lines.push_back(current);
                current.clear();
            }
            lines.push_back(word.substr(0, width));
            word = word.substr(width);
        }
        if (current.empty()) {
            current = word;
        } else if (current.size() + 1 + word.size() <= width) {
            current += ' ';
            current += word;
        } else {
            lines.push_back(current);
            current = word;
        }
    }
    if (!current.empty()) lines.push_back(current);
    if (lines.empty()) lines.push_back("");
    return lines;
}

std::string fixed4(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4f", value);
    return buffer;
}

json fingerprint_to_json(const ConfigFingerprint& fp) {
    return json{{"paraphrase_model", fp.paraphrase_model},
                {"generation_model", fp.generation_model},
                {"embedding_model", fp.embedding_model},
                {"temperature", fp.temperature},
                {"top_p", fp.top_p},
                {"paraphrase_prompt_version", fp.paraphrase_prompt_version},
                {"answer_prompt_version", fp.answer_prompt_version},
                {"k", fp.k},
                {"use_paraphrasing", fp.use_paraphrasing},
                {"include_original", fp.include_original},
                {"sentence_threshold", fp.sentence_threshold},
                {"document_threshold", fp.document_threshold},
                {"seed", fp.seed}};
}

ConfigFingerprint fingerprint_from_json(const json& doc) {
    ConfigFingerprint fp;
    fp.paraphrase_model = doc.value("paraphrase_model", "");
    fp.generation_model = doc.value("generation_model", "");
    fp.embedding_model = doc.value("embedding_model", "");
    fp.temperature = doc.value("temperature", fp.temperature);
    fp.top_p = doc.value("top_p", fp.top_p);
    fp.paraphrase_prompt_version = doc.value("paraphrase_prompt_version", "");
    fp.answer_prompt_version = doc.value("answer_prompt_version", "");
    fp.k = doc.value("k", fp.k);
    fp.use_paraphrasing = doc.value("use_paraphrasing", fp.use_paraphrasing);
    fp.include_original = doc.value("include_original", fp.include_original);
    fp.sentence_threshold = doc.value("sentence_threshold", fp.sentence_threshold);
    fp.document_threshold = doc.value("document_threshold", fp.document_threshold);
    fp.seed = doc.value("seed", fp.seed);
    return fp;
}

} // namespace

void save_report(const DetectionReport& report, const std::string& path) {
    json answers = json::array();
    for (const auto& a : report.generated_answers) {
        answers.push_back(json{{"provenance", a.provenance},
                               {"question_variant", a.question_variant},
                               {"answer", a.answer}});
    }
    json sentences = json::array();
    for (const auto& row : report.sentences) {
        sentences.push_back(json{{"student_sentence", row.student_sentence},
                                 {"matched_sentence", row.matched_sentence},
                                 {"matched_answer_index", row.matched_answer_index},
                                 {"matched_sentence_index", row.matched_sentence_index},
                                 {"score", row.score},
                                 {"posterior", row.posterior}});
    }
    const json doc{{"schema_version", kReportSchemaVersion},
                   {"kind", "detection-report"},
                   {"question", report.question},
                   {"student_response", report.student_response},
                   {"generated_answers", answers},
                   {"sentences", sentences},
                   {"document", json{{"score", report.document.score},
                                     {"posterior", report.document.posterior},
                                     {"label", report.document.label},
                                     {"n_sentences", report.document.n_sentences}}},
                   {"fingerprint", fingerprint_to_json(report.fingerprint)}};
    atomic_write_file(path, doc.dump(2) + "\n");
}

DetectionReport load_report(const std::string& path) {
    json doc;
    try {
        doc = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw FormatError("report file '" + path + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object() || doc.value("kind", "") != "detection-report") {
        throw FormatError("'" + path + "' is not a detection report");
    }
    if (doc.value("schema_version", -1) != kReportSchemaVersion) {
        throw FormatError("report file '" + path + "' has an unsupported schema version");
    }

    DetectionReport report;
    try {
        report.question = doc.at("question").get<std::string>();
        report.student_response = doc.at("student_response").get<std::string>();
        for (const auto& a : doc.at("generated_answers")) {
            report.generated_answers.push_back(
                GeneratedAnswer{a.at("provenance").get<std::string>(),
                                a.at("question_variant").get<std::string>(),
                                a.at("answer").get<std::string>()});
        }
        for (const auto& s : doc.at("sentences")) {
            SentenceRow row;
            row.student_sentence = s.at("student_sentence").get<std::string>();
            row.matched_sentence = s.at("matched_sentence").get<std::string>();
            row.matched_answer_index = s.at("matched_answer_index").get<std::size_t>();
            row.matched_sentence_index = s.at("matched_sentence_index").get<std::size_t>();
            row.score = s.at("score").get<double>();
            row.posterior = s.at("posterior").get<double>();
            report.sentences.push_back(std::move(row));
        }
        const auto& d = doc.at("document");
        report.document.score = d.at("score").get<double>();
        report.document.posterior = d.at("posterior").get<double>();
        report.document.label = d.at("label").get<int>();
        report.document.n_sentences = d.at("n_sentences").get<std::size_t>();
        report.fingerprint = fingerprint_from_json(doc.at("fingerprint"));
    } catch (const json::exception& e) {
        throw FormatError("report file '" + path + "' is missing fields: " + e.what());
    }

    if (report.sentences.empty()) {
        throw FormatError("report file '" + path + "' contains no sentence rows");
    }
    if (report.document.n_sentences != report.sentences.size()) {
        throw FormatError("report file '" + path + "' has an inconsistent sentence count");
    }
    double sum = 0.0;
    for (const auto& row : report.sentences) {
        if (row.posterior < 0.0 || row.posterior > 1.0) {
            throw FormatError("report file '" + path + "' has a posterior outside [0, 1]");
        }
        sum += row.score;
    }
    if (sum / static_cast<double>(report.sentences.size()) != report.document.score) {
        throw FormatError("report file '" + path +
                          "' document score does not match its sentence rows");
    }
    return report;
}

std::string render_report_table(const DetectionReport& report) {
    if (report.sentences.empty()) throw FormatError("cannot render a report with no rows");

    auto rows = report.sentences;
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SentenceRow& a, const SentenceRow& b) { return a.score > b.score; });

    constexpr std::size_t kScoreWidth = 7; // fits "-0.1234"
    constexpr std::size_t kPosteriorWidth = 9; // fits the header

    auto pad_right = [](const std::string& s, std::size_t width) {
        return s + std::string(s.size() < width ? width - s.size() : 0, ' ');
    };
    auto pad_left = [](const std::string& s, std::size_t width) {
        return std::string(s.size() < width ? width - s.size() : 0, ' ') + s;
    };

    const std::string separator = "+" + std::string(kTextColumnWidth + 2, '-') + "+" +
                                  std::string(kTextColumnWidth + 2, '-') + "+" +
                                  std::string(kScoreWidth + 2, '-') + "+" +
                                  std::string(kPosteriorWidth + 2, '-') + "+";
    std::ostringstream out;
    auto emit_row = [&](const std::string& llm, const std::string& student,
                        const std::string& score, const std::string& post) {
        const auto llm_lines = wrap_text(llm, kTextColumnWidth);
        const auto student_lines = wrap_text(student, kTextColumnWidth);
        const std::size_t height = std::max(llm_lines.size(), student_lines.size());
        for (std::size_t line = 0; line < height; ++line) {
            const std::string left = line < llm_lines.size() ? llm_lines[line] : "";
            const std::string right = line < student_lines.size() ? student_lines[line] : "";
            out << "| " << pad_right(left, kTextColumnWidth) << " | "
                << pad_right(right, kTextColumnWidth) << " | "
                << pad_left(line == 0 ? score : "", kScoreWidth) << " | "
                << pad_left(line == 0 ? post : "", kPosteriorWidth) << " |\n";
        }
    };

    out << separator << "\n";
    emit_row("LLM sentence", "Student sentence", "Cosine", "Posterior");
    out << separator << "\n";
    for (const auto& row : rows) {
        emit_row(row.matched_sentence, row.student_sentence, fixed4(row.score),
                 fixed4(row.posterior));
        out << separator << "\n";
    }
    out << "Document: score " << fixed4(report.document.score) << ", posterior "
        << fixed4(report.document.posterior) << ", label " << report.document.label << " ("
        << report.document.n_sentences << " sentences)\n";
    return out.str();
}

} // namespace paraprobe
