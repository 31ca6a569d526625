#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cyberevo {

/// Base error for every recoverable failure raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Side : std::uint8_t { Red, Blue };

constexpr Side opposite(Side s) noexcept { return s == Side::Red ? Side::Blue : Side::Red; }

std::string_view to_string(Side s) noexcept;
Side parse_side(std::string_view text);

} // namespace cyberevo
