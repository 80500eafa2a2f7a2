#include "paraprobe/prompts.hpp"

namespace paraprobe {

std::string render_paraphrase_prompt(const std::string& question, std::size_t k) {
    const std::string n = std::to_string(k);
    return "Rewrite the question below in " + n +
           " different ways. Each rewrite must keep the original meaning but use "
           "different wording. Return exactly " + n +
           " lines, one rewrite per line, numbered 1 to " + n +
           ", with no other text.\n\nQuestion: " + question;
}

} // namespace paraprobe
