#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace baker {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

// "0110" <-> {0,1,1,0}. Throws DomainError on characters other than 0/1.
Word parse_word(std::string_view text);
std::string format_word(const Word& w);

}  // namespace baker
