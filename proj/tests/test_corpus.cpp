#include "paraprobe/corpus.hpp"
#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>

using namespace paraprobe;

namespace {

const std::filesystem::path kFixtures = PARAPROBE_FIXTURE_DIR;

std::filesystem::path temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("paraprobe_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("parse_hc3_record reads a full record") {
    const auto record = parse_hc3_record(
        R"({"id": "r1", "question": "Why?", "human_answers": [" because ", ""], "chatgpt_answers": ["Reason one.", "Reason two."]})");
    CHECK(record.id == "r1");
    CHECK(record.question == "Why?");
    REQUIRE(record.human_answers.size() == 1); // blank answer dropped, survivor trimmed
    CHECK(record.human_answers[0] == "because");
    CHECK(record.machine_answers.size() == 2);
    CHECK(record.source == Source::hc3);
}

TEST_CASE("parse_hc3_record falls back to the supplied id") {
    const auto record = parse_hc3_record(
        R"({"question": "Why?", "human_answers": ["a"], "chatgpt_answers": ["b"]})", "hc3-7");
    CHECK(record.id == "hc3-7");
}

TEST_CASE("parse_hc3_record names the missing field") {
    try {
        parse_hc3_record(R"({"human_answers": [], "chatgpt_answers": []})", "x");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("question") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_hc3_record(R"({"question": "q", "chatgpt_answers": []})", "x"),
                    ParseError);
    CHECK_THROWS_AS(parse_hc3_record("not json", "x"), ParseError);
}

TEST_CASE("parse_hc3_record validates content") {
    // no id anywhere
    CHECK_THROWS_AS(parse_hc3_record(
                        R"({"question": "q", "human_answers": [], "chatgpt_answers": []})"),
                    ValidationError);
    // empty question
    CHECK_THROWS_AS(parse_hc3_record(
                        R"({"question": "  ", "human_answers": [], "chatgpt_answers": []})", "x"),
                    ValidationError);
}

TEST_CASE("normalize_wiki_intro synthesizes the question") {
    const auto record = normalize_wiki_intro(WikiIntroRow{"Basalt", "Basalt is a rock.",
                                                          "Basalt is an igneous rock."});
    CHECK(record.id == "wiki:Basalt");
    CHECK(record.question == "Write a short encyclopedia-style introduction about Basalt.");
    REQUIRE(record.human_answers.size() == 1);
    REQUIRE(record.machine_answers.size() == 1);
    CHECK(record.source == Source::wiki_intro);

    CHECK_THROWS_AS(normalize_wiki_intro(WikiIntroRow{"", "a", "b"}), ValidationError);
    CHECK_THROWS_AS(normalize_wiki_intro(WikiIntroRow{"t", "", "b"}), ValidationError);
    CHECK_THROWS_AS(normalize_wiki_intro(WikiIntroRow{"t", "a", ""}), ValidationError);
}

TEST_CASE("build_pairs emits HM then MM") {
    QARecord record;
    record.id = "r";
    record.question = "q";
    record.human_answers = {"human"};
    record.machine_answers = {"m1", "m2"};
    const auto pairs = build_pairs(record);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].label == PairLabel::hm);
    CHECK(pairs[0].side_a == "human");
    CHECK(pairs[0].side_b == "m1");
    CHECK(pairs[1].label == PairLabel::mm);
    CHECK(pairs[1].side_a == "m1");
    CHECK(pairs[1].side_b == "m2");
    CHECK(static_cast<int>(pairs[0].label) == 0);
    CHECK(static_cast<int>(pairs[1].label) == 1);
}

TEST_CASE("build_pairs degrades to the pairs it can form") {
    QARecord record;
    record.id = "r";
    record.question = "q";
    record.machine_answers = {"m1", "m2"};
    CHECK(build_pairs(record).size() == 1); // MM only
    record.machine_answers = {"m1"};
    record.human_answers = {"h"};
    CHECK(build_pairs(record).size() == 1); // HM only
    record.machine_answers.clear();
    CHECK(build_pairs(record).empty());
}

TEST_CASE("split_dataset sizes and determinism") {
    std::vector<QARecord> records(10);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].id = "r" + std::to_string(i);
        records[i].question = "q";
    }
    const auto [train_a, test_a] = split_dataset(records, SplitSpec{0.8, 5});
    CHECK(train_a.size() == 8);
    CHECK(test_a.size() == 2);
    const auto [train_b, test_b] = split_dataset(records, SplitSpec{0.8, 5});
    for (std::size_t i = 0; i < train_a.size(); ++i) CHECK(train_a[i].id == train_b[i].id);

    // every record lands on exactly one side
    std::vector<std::string> ids;
    for (const auto& r : train_a) ids.push_back(r.id);
    for (const auto& r : test_a) ids.push_back(r.id);
    std::sort(ids.begin(), ids.end());
    CHECK(std::unique(ids.begin(), ids.end()) == ids.end());
    CHECK(ids.size() == records.size());

    CHECK_THROWS_AS(split_dataset({}, SplitSpec{0.8, 0}), ValidationError);
    CHECK_THROWS_AS(split_dataset(records, SplitSpec{0.0, 0}), ValidationError);
    CHECK_THROWS_AS(split_dataset(records, SplitSpec{1.0, 0}), ValidationError);
}

TEST_CASE("load_hc3 reads the bundled fixture") {
    const auto records = load_hc3(kFixtures / "hc3_small.jsonl");
    REQUIRE(records.size() == 5);
    CHECK(records[0].id == "hc3-1"); // no id in the file, line-derived
    CHECK(records[1].id == "photosynthesis");
    CHECK(records[4].id == "honey");
    CHECK(records[0].human_answers.size() == 1);
    CHECK(records[0].machine_answers.size() == 2);
    CHECK(records[4].human_answers.empty());

    CHECK(load_hc3(kFixtures / "hc3_small.jsonl", 2).size() == 2);
}

TEST_CASE("load_hc3 rejects duplicate ids") {
    const auto dir = temp_dir("corpus_dup");
    const auto path = dir / "dup.jsonl";
    atomic_write_file(path,
                      R"({"id": "same", "question": "a", "human_answers": [], "chatgpt_answers": ["x"]})"
                      "\n"
                      R"({"id": "same", "question": "b", "human_answers": [], "chatgpt_answers": ["y"]})"
                      "\n");
    CHECK_THROWS_AS(load_hc3(path), ValidationError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("load_wiki_intro reads the bundled fixture") {
    const auto records = load_wiki_intro(kFixtures / "wiki_small.csv");
    REQUIRE(records.size() == 3);
    CHECK(records[0].id == "wiki:Sakura");
    CHECK(records[0].question == "Write a short encyclopedia-style introduction about Sakura.");
    CHECK(records[0].source == Source::wiki_intro);
    REQUIRE(records[0].human_answers.size() == 1);
    CHECK(records[0].human_answers[0].find("cherry blossom") != std::string::npos);
    CHECK(load_wiki_intro(kFixtures / "wiki_small.csv", 1).size() == 1);
}

TEST_CASE("corpus file round trip") {
    const auto dir = temp_dir("corpus_rt");
    const auto original = load_hc3(kFixtures / "hc3_small.jsonl");
    const auto path = dir / "corpus.jsonl";
    save_corpus(original, path);
    const auto loaded = load_corpus(path);
    REQUIRE(loaded.size() == original.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].id == original[i].id);
        CHECK(loaded[i].question == original[i].question);
        CHECK(loaded[i].human_answers == original[i].human_answers);
        CHECK(loaded[i].machine_answers == original[i].machine_answers);
        CHECK(loaded[i].source == original[i].source);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("load_corpus rejects records missing canonical fields") {
    const auto dir = temp_dir("corpus_bad");
    const auto path = dir / "bad.jsonl";
    atomic_write_file(path, R"({"id": "x", "question": "q"})"
                            "\n");
    CHECK_THROWS_AS(load_corpus(path), ParseError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("source names round trip") {
    CHECK(source_from_name(source_name(Source::hc3)) == Source::hc3);
    CHECK(source_from_name(source_name(Source::wiki_intro)) == Source::wiki_intro);
    CHECK(source_from_name(source_name(Source::custom)) == Source::custom);
    CHECK_THROWS_AS(source_from_name("bogus"), ParseError);
}
