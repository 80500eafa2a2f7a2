#include "paraprobe/corpus.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace paraprobe {

using nlohmann::json;

std::string_view source_name(Source source) {
    switch (source) {
    case Source::hc3: return "hc3";
    case Source::wiki_intro: return "wiki_intro";
    case Source::custom: return "custom";
    }
    return "custom";
}

Source source_from_name(std::string_view name) {
    if (name == "hc3") return Source::hc3;
    if (name == "wiki_intro") return Source::wiki_intro;
    if (name == "custom") return Source::custom;
    throw ParseError("unknown corpus source: '" + std::string(name) + "'");
}

namespace {

// Trim each answer; drop entries that are empty afterwards.
std::vector<std::string> clean_answers(const json& array, const char* field) {
    if (!array.is_array()) {
        throw ParseError(std::string("field '") + field + "' must be an array of strings");
    }
    std::vector<std::string> out;
    out.reserve(array.size());
    for (const auto& item : array) {
        if (!item.is_string()) {
            throw ParseError(std::string("field '") + field + "' must contain only strings");
        }
        const auto trimmed = trim(item.get_ref<const std::string&>());
        if (!trimmed.empty()) out.emplace_back(trimmed);
    }
    return out;
}

} // namespace

QARecord parse_hc3_record(std::string_view line, std::string_view fallback_id) {
    json record;
    try {
        record = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed record: ") + e.what());
    }
    if (!record.is_object()) throw ParseError("record must be a JSON object");

    if (!record.contains("question")) throw ParseError("record missing field 'question'");
    if (!record.contains("human_answers")) throw ParseError("record missing field 'human_answers'");
    if (!record.contains("chatgpt_answers")) throw ParseError("record missing field 'chatgpt_answers'");
    if (!record["question"].is_string()) throw ParseError("field 'question' must be a string");

    QARecord out;
    out.source = Source::hc3;
    out.question = std::string(trim(record["question"].get_ref<const std::string&>()));
    if (out.question.empty()) throw ValidationError("record has an empty question");

    if (record.contains("id") && record["id"].is_string()) {
        out.id = std::string(trim(record["id"].get_ref<const std::string&>()));
    }
    if (out.id.empty()) out.id = std::string(fallback_id);
    if (out.id.empty()) throw ValidationError("record has no id and no fallback id was supplied");

    out.human_answers = clean_answers(record["human_answers"], "human_answers");
    out.machine_answers = clean_answers(record["chatgpt_answers"], "chatgpt_answers");
    return out;
}

QARecord normalize_wiki_intro(const WikiIntroRow& row) {
    const auto title = trim(row.title);
    const auto human = trim(row.wiki_intro);
    const auto generated = trim(row.generated_intro);
    if (title.empty()) throw ValidationError("wiki-intro row has an empty title");
    if (human.empty()) throw ValidationError("wiki-intro row has an empty human intro");
    if (generated.empty()) throw ValidationError("wiki-intro row has an empty generated intro");

    QARecord out;
    out.source = Source::wiki_intro;
    out.id = "wiki:" + std::string(title);
    out.question = "Write a short encyclopedia-style introduction about " + std::string(title) + ".";
    out.human_answers.emplace_back(human);
    out.machine_answers.emplace_back(generated);
    return out;
}

std::vector<ComparisonPair> build_pairs(const QARecord& record) {
    std::vector<ComparisonPair> pairs;
    if (record.machine_answers.empty()) return pairs; // unusable for pairing
    if (!record.human_answers.empty()) {
        pairs.push_back({record.id, record.human_answers[0], record.machine_answers[0], PairLabel::hm});
    }
    if (record.machine_answers.size() >= 2) {
        pairs.push_back({record.id, record.machine_answers[0], record.machine_answers[1], PairLabel::mm});
    }
    return pairs;
}

std::pair<std::vector<QARecord>, std::vector<QARecord>>
split_dataset(const std::vector<QARecord>& records, const SplitSpec& spec) {
    if (records.empty()) throw ValidationError("cannot split an empty record list");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw ValidationError("train_fraction must lie in (0,1)");
    }
    std::vector<QARecord> shuffled = records;
    seeded_shuffle(shuffled, spec.seed);
    const auto train_count = static_cast<std::size_t>(
        std::ceil(static_cast<double>(shuffled.size()) * spec.train_fraction));
    std::vector<QARecord> train(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(train_count));
    std::vector<QARecord> test(shuffled.begin() + static_cast<std::ptrdiff_t>(train_count), shuffled.end());
    return {std::move(train), std::move(test)};
}

std::vector<QARecord> load_hc3(const std::filesystem::path& path, std::optional<std::size_t> limit) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    std::vector<QARecord> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        if (limit && records.size() >= *limit) break;
        auto record = parse_hc3_record(line, "hc3-" + std::to_string(line_number));
        if (!seen_ids.insert(record.id).second) {
            throw ValidationError("duplicate record id '" + record.id + "' at line " +
                                  std::to_string(line_number));
        }
        records.push_back(std::move(record));
    }
    return records;
}

std::vector<QARecord> load_wiki_intro(const std::filesystem::path& path, std::optional<std::size_t> limit) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    CsvReader reader(in);
    const auto header = reader.next_row();
    if (!header) throw ParseError("wiki-intro file is empty");

    auto column = [&](std::string_view name) -> std::size_t {
        for (std::size_t i = 0; i < header->size(); ++i) {
            if (trim((*header)[i]) == name) return i;
        }
        throw ParseError("wiki-intro file missing column '" + std::string(name) + "'");
    };
    const std::size_t title_col = column("title");
    const std::size_t human_col = column("wiki_intro");
    const std::size_t generated_col = column("generated_intro");

    std::vector<QARecord> records;
    while (auto row = reader.next_row()) {
        if (limit && records.size() >= *limit) break;
        const std::size_t needed = std::max({title_col, human_col, generated_col}) + 1;
        if (row->size() < needed) {
            throw ParseError("wiki-intro row " + std::to_string(records.size() + 2) +
                             " has too few columns");
        }
        records.push_back(normalize_wiki_intro({(*row)[title_col], (*row)[human_col], (*row)[generated_col]}));
    }
    return records;
}

void save_corpus(const std::vector<QARecord>& records, const std::filesystem::path& path) {
    std::string out;
    for (const auto& record : records) {
        json j{{"id", record.id},
               {"question", record.question},
               {"human_answers", record.human_answers},
               {"machine_answers", record.machine_answers},
               {"source", source_name(record.source)}};
        out += j.dump();
        out += '\n';
    }
    atomic_write_file(path, out);
}

std::vector<QARecord> load_corpus(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path.string());
    std::vector<QARecord> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("corpus line " + std::to_string(line_number) + ": " + e.what());
        }
        for (const char* field : {"id", "question", "human_answers", "machine_answers", "source"}) {
            if (!j.contains(field)) {
                throw ParseError("corpus line " + std::to_string(line_number) +
                                 " missing field '" + field + "'");
            }
        }
        QARecord record;
        record.id = j["id"].get<std::string>();
        record.question = j["question"].get<std::string>();
        record.human_answers = j["human_answers"].get<std::vector<std::string>>();
        record.machine_answers = j["machine_answers"].get<std::vector<std::string>>();
        record.source = source_from_name(j["source"].get<std::string>());
        if (record.id.empty()) throw ValidationError("corpus line " + std::to_string(line_number) + " has an empty id");
        if (!seen_ids.insert(record.id).second) {
            throw ValidationError("duplicate record id '" + record.id + "'");
        }
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace paraprobe
