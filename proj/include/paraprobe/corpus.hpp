#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace paraprobe {

enum class Source { hc3, wiki_intro, custom };

std::string_view source_name(Source source);
Source source_from_name(std::string_view name);

/// One question with its human and machine answers; the unit of ingestion.
struct QARecord {
    std::string id;
    std::string question;
    std::vector<std::string> human_answers;
    std::vector<std::string> machine_answers;
    Source source = Source::custom;
};

enum class PairLabel : int { hm = 0, mm = 1 };

/// A labeled pair of response texts from the same record.
/// HM = one human + one machine answer (label 0); MM = two machine answers (label 1).
struct ComparisonPair {
    std::string record_id;
    std::string side_a;
    std::string side_b;
    PairLabel label = PairLabel::hm;
};

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 0;
};

struct WikiIntroRow {
    std::string title;
    std::string wiki_intro;
    std::string generated_intro;
};

/// Parse one line of an HC3-style corpus (JSON object per line with fields
/// `question`, `human_answers`, `chatgpt_answers`, optional `id`).
/// `fallback_id` is used when the record carries no id of its own.
QARecord parse_hc3_record(std::string_view line, std::string_view fallback_id = {});

/// Map a wiki-intro row (title, human intro, generated intro) to a QARecord
/// whose question is synthesized from the title.
QARecord normalize_wiki_intro(const WikiIntroRow& row);

/// HM pair from (human[0], machine[0]) when a human answer exists, then an
/// MM pair from (machine[0], machine[1]) when two machine answers exist.
/// Returns an empty list when the record cannot form any pair.
std::vector<ComparisonPair> build_pairs(const QARecord& record);

/// Deterministic seeded shuffle; the first ceil(n * train_fraction) records
/// form the train side. Throws on an empty input or a fraction outside (0,1).
std::pair<std::vector<QARecord>, std::vector<QARecord>>
split_dataset(const std::vector<QARecord>& records, const SplitSpec& spec);

// ---- corpus files ----

/// Load an HC3-style line-delimited file. Records missing an `id` get
/// sequential ids derived from their line number.
std::vector<QARecord> load_hc3(const std::filesystem::path& path,
                               std::optional<std::size_t> limit = std::nullopt);

/// Load a wiki-intro CSV with `title`, `wiki_intro`, `generated_intro` columns.
std::vector<QARecord> load_wiki_intro(const std::filesystem::path& path,
                                      std::optional<std::size_t> limit = std::nullopt);

/// Canonical corpus format: one JSON record per line, UTF-8.
void save_corpus(const std::vector<QARecord>& records, const std::filesystem::path& path);
std::vector<QARecord> load_corpus(const std::filesystem::path& path);

} // namespace paraprobe
