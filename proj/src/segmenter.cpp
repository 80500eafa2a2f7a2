#include "paraprobe/segmenter.hpp"

#include "paraprobe/util.hpp"

#include <array>
#include <cctype>

namespace paraprobe {

namespace {

constexpr std::array<std::string_view, 10> kAbbreviations = {
    "dr.", "mr.", "mrs.", "ms.", "e.g.", "i.e.", "etc.", "vs.", "st.", "no.",
};

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) {
    return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}';
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// The word ending at the '.' at position `dot`, including internal dots
// ("e.g." scans back through 'g' and '.'), lowercased and matched against
// the fixed list.
bool abbreviation_before(std::string_view body, std::size_t dot) {
    std::size_t begin = dot;
    while (begin > 0) {
        const char c = body[begin - 1];
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '.') {
            --begin;
        } else {
            break;
        }
    }
    if (begin == dot) return false; // bare dot, no word before it
    const std::string token = to_lower(body.substr(begin, dot - begin + 1));
    for (const auto abbr : kAbbreviations) {
        if (token == abbr) return true;
    }
    return false;
}

} // namespace

std::vector<Sentence> segment(std::string_view doc_id, std::string_view body) {
    std::vector<Sentence> sentences;
    const std::size_t n = body.size();
    std::size_t start = 0;

    auto flush = [&](std::size_t end_pos) {
        std::size_t b = start;
        while (b < end_pos && is_space(body[b])) ++b;
        std::size_t e = end_pos;
        while (e > b && is_space(body[e - 1])) --e;
        if (e > b) {
            sentences.push_back(Sentence{std::string(doc_id), sentences.size(),
                                         std::string(body.substr(b, e - b)), b, e});
        }
        start = end_pos;
    };

    for (std::size_t i = 0; i < n; ++i) {
        if (!is_terminator(body[i])) continue;

        std::size_t j = i + 1;
        while (j < n && is_closer(body[j])) ++j;
        std::size_t k = j;
        while (k < n && is_space(body[k])) ++k;

        bool boundary = false;
        if (k == n) {
            boundary = true; // terminator closes the text
        } else if (k > j) {
            const unsigned char next = static_cast<unsigned char>(body[k]);
            if (std::isupper(next) || std::isdigit(next)) boundary = true;
            if (boundary && body[i] == '.' && abbreviation_before(body, i)) boundary = false;
        }

        if (boundary) {
            flush(j);
            i = j - 1;
        }
    }
    flush(n);
    return sentences;
}

} // namespace paraprobe
