#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace paraprobe {

struct GeneratedAnswer {
    std::string provenance; // "original" or "paraphrase:<i>"
    std::string question_variant;
    std::string answer;
};

struct SentenceRow {
    std::string student_sentence;
    std::string matched_sentence;
    std::size_t matched_answer_index = 0; // into DetectionReport::generated_answers
    std::size_t matched_sentence_index = 0; // sentence index within that answer
    double score = 0.0;
    double posterior = 0.0;
};

struct DocumentResult {
    double score = 0.0;
    double posterior = 0.0;
    int label = 0;
    std::size_t n_sentences = 0;
};

struct ConfigFingerprint {
    std::string paraphrase_model;
    std::string generation_model;
    std::string embedding_model;
    double temperature = 0.7;
    double top_p = 1.0;
    std::string paraphrase_prompt_version;
    std::string answer_prompt_version;
    std::size_t k = 3;
    bool use_paraphrasing = true;
    bool include_original = true;
    double sentence_threshold = 0.5;
    double document_threshold = 0.5;
    std::uint64_t seed = 0;
};

struct DetectionReport {
    std::string question;
    std::string student_response;
    std::vector<GeneratedAnswer> generated_answers;
    std::vector<SentenceRow> sentences; // in student order
    DocumentResult document;
    ConfigFingerprint fingerprint;
};

void save_report(const DetectionReport& report, const std::string& path);
DetectionReport load_report(const std::string& path);

// Four columns (LLM sentence, student sentence, cosine, posterior), rows
// sorted by descending similarity, text wrapped to fixed-width columns.
std::string render_report_table(const DetectionReport& report);

} // namespace paraprobe
