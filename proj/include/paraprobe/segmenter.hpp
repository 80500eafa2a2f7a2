#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace paraprobe {

/// One sentence of a document. `begin`/`end` are byte offsets into the source
/// body with text == body[begin, end).
struct Sentence {
    std::string doc_id;
    std::size_t index = 0;
    std::string text;
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Rule-based sentence splitting. A boundary follows `.` `!` `?` (plus any
/// closing quotes/brackets) when the next non-space character is an uppercase
/// letter or digit, or when the terminator ends the text. A fixed abbreviation
/// list (Dr., Mr., Mrs., Ms., e.g., i.e., etc., vs., St., No.) suppresses `.`
/// boundaries. Text without a terminator yields one sentence; whitespace-only
/// input yields none.
std::vector<Sentence> segment(std::string_view doc_id, std::string_view body);

} // namespace paraprobe
