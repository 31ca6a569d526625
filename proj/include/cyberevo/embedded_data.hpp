#pragma once

#include "cyberevo/common.hpp"

#include <string_view>

namespace cyberevo {

/// Contents of a file shipped under data/, compiled into the library.
/// `name` is the path relative to data/, e.g. "grammars/red_baseline.bnf".
std::string_view embedded_file(std::string_view name);

} // namespace cyberevo
