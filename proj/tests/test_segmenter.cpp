#include "paraprobe/segmenter.hpp"
#include "paraprobe/util.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>
#include <vector>

using namespace paraprobe;

namespace {

std::vector<std::string> texts(const std::vector<Sentence>& sentences) {
    std::vector<std::string> out;
    for (const auto& s : sentences) out.push_back(s.text);
    return out;
}

} // namespace

TEST_CASE("plain declaratives split on terminator + uppercase") {
    const auto sentences = segment("doc", "A runs. B walks.");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "A runs.");
    CHECK(sentences[1].text == "B walks.");
}

TEST_CASE("spans are half-open byte offsets into the body") {
    const std::string body = "A runs. B walks.";
    const auto sentences = segment("doc", body);
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].begin == 0);
    CHECK(sentences[0].end == 7);
    CHECK(sentences[1].begin == 8);
    CHECK(sentences[1].end == 16);
    for (const auto& s : sentences) {
        CHECK(body.substr(s.begin, s.end - s.begin) == s.text);
    }
}

TEST_CASE("doc id and index propagate") {
    const auto sentences = segment("essay-3", "One. Two. Three.");
    REQUIRE(sentences.size() == 3);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        CHECK(sentences[i].doc_id == "essay-3");
        CHECK(sentences[i].index == i);
    }
}

TEST_CASE("abbreviations do not end sentences") {
    CHECK(segment("d", "Dr. Smith arrived. He left.").size() == 2);
    CHECK(segment("d", "We need examples, e.g. Apples are red.").size() == 1);
    CHECK(segment("d", "That is, i.e. It follows.").size() == 1);
    CHECK(segment("d", "Buy milk, eggs, etc. Then go home.").size() == 1);
    CHECK(segment("d", "Mr. Jones vs. Ms. Doe went to St. Ives.").size() == 1);
}

TEST_CASE("decimal points are not boundaries") {
    const auto sentences = segment("d", "Pi is 3.14 about.");
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].text == "Pi is 3.14 about.");
}

TEST_CASE("closing quotes and brackets stay with their sentence") {
    const auto quoted = segment("d", "He said \"Stop.\" Then left.");
    REQUIRE(quoted.size() == 2);
    CHECK(quoted[0].text == "He said \"Stop.\"");
    CHECK(quoted[1].text == "Then left.");

    const auto parens = segment("d", "(See note.) Next point.");
    REQUIRE(parens.size() == 2);
    CHECK(parens[0].text == "(See note.)");
}

TEST_CASE("terminator runs bind to one sentence") {
    const auto sentences = segment("d", "Really?! Yes.");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "Really?!");
    CHECK(sentences[1].text == "Yes.");
}

TEST_CASE("digits start sentences too") {
    CHECK(segment("d", "It costs $5. 20 people paid.").size() == 2);
}

TEST_CASE("lowercase after a period is not a boundary") {
    const auto sentences = segment("d", "He left. then returned.");
    REQUIRE(sentences.size() == 1);
}

TEST_CASE("newlines count as whitespace between sentences") {
    const auto sentences = segment("d", "First line ends.\nSecond one too.");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[1].text == "Second one too.");
}

TEST_CASE("unterminated text yields one sentence") {
    const auto sentences = segment("d", "no terminator here");
    REQUIRE(sentences.size() == 1);
    CHECK(sentences[0].text == "no terminator here");
}

TEST_CASE("blank input yields nothing") {
    CHECK(segment("d", "").empty());
    CHECK(segment("d", "   \n\t  ").empty());
}

TEST_CASE("leading and trailing whitespace is trimmed from sentence text") {
    const std::string body = "  Padded start. Padded end.  ";
    const auto sentences = segment("d", body);
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "Padded start.");
    CHECK(sentences[0].begin == 2);
    CHECK(sentences[1].text == "Padded end.");
    for (const auto& s : sentences) {
        CHECK(body.substr(s.begin, s.end - s.begin) == s.text);
    }
}

TEST_CASE("bundled response fixture segments into ten sentences") {
    const auto body = read_file(std::filesystem::path(PARAPROBE_FIXTURE_DIR) / "hacker_response.txt");
    const auto sentences = segment("student", body);
    REQUIRE(sentences.size() == 10);
    CHECK(texts(sentences)[7] == "GLaDOS however, will give you no cake.");
}

TEST_CASE("question mark boundaries") {
    const auto sentences = segment("d", "What is hacking? It depends.");
    REQUIRE(sentences.size() == 2);
    CHECK(sentences[0].text == "What is hacking?");
}
