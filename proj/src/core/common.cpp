#include "cyberevo/common.hpp"

namespace cyberevo {

std::string_view to_string(Side s) noexcept { return s == Side::Red ? "red" : "blue"; }

Side parse_side(std::string_view text) {
    if (text == "red" || text == "Red" || text == "R") return Side::Red;
    if (text == "blue" || text == "Blue" || text == "B") return Side::Blue;
    throw Error("unknown side '" + std::string(text) + "'");
}

} // namespace cyberevo
