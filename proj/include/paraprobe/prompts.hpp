#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace paraprobe {

// Prompt templates are versioned assets: the version participates in cache
// keys so editing a template invalidates previously cached responses.
inline constexpr std::string_view kParaphrasePromptVersion = "para-v1";
inline constexpr std::string_view kAnswerPromptVersion = "answer-v1";

inline constexpr std::string_view kAnswerSystemPrompt =
    "You are a helpful assistant. Answer the question directly, clearly, and "
    "in complete sentences.";

/// Instructs the model to return exactly k numbered paraphrases, one per line.
std::string render_paraphrase_prompt(const std::string& question, std::size_t k);

} // namespace paraprobe
