#include "paraprobe/mock_provider.hpp"

#include "paraprobe/error.hpp"
#include "paraprobe/util.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace paraprobe {

namespace {

const std::unordered_map<std::string, std::string>& synonym_table() {
    static const std::unordered_map<std::string, std::string> table = {
        {"always", "constantly"}, {"wanted", "wished"},     {"want", "wish"},
        {"know", "understand"},   {"really", "truly"},      {"doing", "working on"},
        {"explain", "describe"},  {"quickly", "rapidly"},   {"speed", "quickness"},
        {"precision", "accuracy"},{"people", "folks"},      {"make", "create"},
        {"makes", "creates"},     {"use", "employ"},        {"uses", "employs"},
        {"good", "solid"},        {"big", "large"},         {"small", "tiny"},
        {"important", "significant"}, {"hard", "difficult"}, {"easy", "simple"},
        {"think", "believe"},     {"show", "demonstrate"},  {"find", "locate"},
        {"help", "assist"},       {"start", "begin"},       {"question", "query"},
        {"answer", "response"},   {"write", "compose"},     {"short", "brief"},
        {"possibly", "perhaps"},  {"requires", "demands"},  {"curious", "interested"},
    };
    return table;
}

constexpr std::array<std::string_view, 6> kLeadIns = {
    "Put differently, ",
    "In other words, ",
    "Here is another way to ask it: ",
    "Rephrased: ",
    "Stated differently, ",
    "To ask the same thing another way: ",
};

const std::unordered_set<std::string>& stopwords() {
    static const std::unordered_set<std::string> words = {
        "the", "a", "an", "and", "or", "but", "is", "are", "was", "were", "be",
        "been", "being", "have", "has", "had", "do", "does", "did", "will",
        "would", "can", "could", "should", "what", "why", "how", "when",
        "where", "who", "that", "this", "these", "those", "i", "you", "he",
        "she", "it", "we", "they", "me", "my", "your", "their", "its", "to",
        "of", "in", "on", "at", "for", "with", "about", "like", "as", "if",
        "so", "not", "no", "am", "im", "ive", "please", "really", "always",
    };
    return words;
}

// Replace words via the synonym table; rebuilds the string with the original
// delimiters so nothing else changes.
std::string synonym_pass(const std::string& text, std::mt19937_64& rng) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (std::isalpha(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < n && std::isalpha(static_cast<unsigned char>(text[j]))) ++j;
            const std::string word = text.substr(i, j - i);
            const std::string lower = to_lower(word);
            const auto it = synonym_table().find(lower);
            if (it != synonym_table().end() && rng() % 100 < 55) {
                std::string replacement = it->second;
                if (std::isupper(static_cast<unsigned char>(word[0]))) {
                    replacement[0] = static_cast<char>(
                        std::toupper(static_cast<unsigned char>(replacement[0])));
                }
                out += replacement;
            } else {
                out += word;
            }
            i = j;
        } else {
            out.push_back(text[i]);
            ++i;
        }
    }
    return out;
}

std::vector<std::string> content_tokens(const std::string& text, std::size_t max_tokens) {
    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (auto& token : tokenize_words(text)) {
        if (token.size() < 3 || stopwords().count(token)) continue;
        if (!seen.insert(token).second) continue;
        out.push_back(token);
        if (out.size() >= max_tokens) break;
    }
    return out;
}

std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

constexpr std::uint64_t kParaphraseSalt = 0x7061726170687261ULL;
constexpr std::uint64_t kAnswerSalt = 0x616e737765722121ULL;

} // namespace

MockProvider::MockProvider(ProviderConfig config) : config_(std::move(config)) {
    if (config_.embedding_dimension == 0) {
        throw ValidationError("mock embedding dimension must be positive");
    }
}

std::string MockProvider::tag() const { return "mock:" + config_.model_name; }

std::vector<std::string> MockProvider::paraphrase(const std::string& question, std::size_t k) {
    if (trim(question).empty()) throw ValidationError("paraphrase requires a non-empty question");
    if (k < 1) throw ValidationError("paraphrase count k must be >= 1");

    std::vector<std::string> out;
    std::unordered_set<std::string> seen;
    for (std::size_t variant = 0; variant < k; ++variant) {
        std::mt19937_64 rng(mix64(mix64(fnv1a64(question), config_.seed), kParaphraseSalt + variant));
        std::string candidate = synonym_pass(question, rng);
        if (candidate == question) {
            candidate = std::string(kLeadIns[variant % kLeadIns.size()]) + candidate;
        }
        std::size_t bump = 1;
        while (candidate == question || seen.count(candidate)) {
            candidate = std::string(kLeadIns[(variant + bump) % kLeadIns.size()]) + candidate;
            ++bump;
        }
        seen.insert(candidate);
        out.push_back(std::move(candidate));
    }
    return out;
}

std::string MockProvider::generate_answer(const std::string& question) {
    if (trim(question).empty()) throw ValidationError("generate_answer requires a non-empty question");

    std::mt19937_64 rng(mix64(mix64(fnv1a64(question), config_.seed), kAnswerSalt));
    auto tokens = content_tokens(question, 6);
    if (tokens.empty()) tokens.push_back("this topic");
    const auto tok = [&](std::size_t i) { return tokens[i % tokens.size()]; };

    const std::vector<std::string> templates = {
        "In simple terms, " + tok(0) + " comes down to " + tok(1) + " and " + tok(2) + ".",
        capitalize(tok(0)) + " looks dramatic from the outside, but day to day it is mostly about " +
            tok(1) + ".",
        "A useful way to picture " + tok(0) + " is as a series of small steps built around " +
            tok(1) + ".",
        "The part involving " + tok(2) + " matters because it connects " + tok(0) + " with " +
            tok(1) + ".",
        "With enough practice, the " + tok(1) + " side of " + tok(0) + " starts to feel routine.",
        "In short, " + tok(0) + " rewards patience and careful attention far more than raw speed.",
    };

    std::vector<std::size_t> order(templates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng() % i]);
    }

    const std::size_t count = 3 + static_cast<std::size_t>(rng() % 3);
    std::string answer;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) answer += ' ';
        answer += templates[order[i]];
    }
    return answer;
}

EmbeddingVector MockProvider::embed_one(const std::string& text) const {
    std::vector<float> values(config_.embedding_dimension, 0.0f);
    const auto tokens = tokenize_words(text);
    for (const auto& token : tokens) {
        const std::uint64_t h = mix64(fnv1a64(token), config_.seed);
        const std::size_t index = static_cast<std::size_t>(h % config_.embedding_dimension);
        const float sign = ((h >> 32) & 1u) ? 1.0f : -1.0f;
        values[index] += sign;
    }
    bool all_zero = true;
    for (float v : values) {
        if (v != 0.0f) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) {
        // No tokens, or signs cancelled exactly: fall back to one whole-text feature.
        const std::uint64_t h = mix64(fnv1a64(text), config_.seed);
        values[static_cast<std::size_t>(h % config_.embedding_dimension)] = 1.0f;
    }
    return make_embedding(std::move(values), tag());
}

std::vector<EmbeddingVector> MockProvider::embed(const std::vector<std::string>& texts) {
    if (texts.empty()) throw ValidationError("embed requires a non-empty text list");
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& text : texts) {
        if (text.empty()) throw ValidationError("embed requires non-empty texts");
        out.push_back(embed_one(text));
    }
    return out;
}

} // namespace paraprobe
