#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace affekt {

// ASCII plus Latin-1/Latin Extended-A case folding over UTF-8 input.
std::string to_lower(std::string_view text);
std::string_view trim(std::string_view text) noexcept;
std::vector<std::string_view> split(std::string_view text, char sep);

// Number of code points in a UTF-8 string (invalid bytes count as one each).
std::size_t utf8_length(std::string_view text) noexcept;

}  // namespace affekt
