#include "cyberevo/sim/observation.hpp"

#include <array>

namespace cyberevo::sim {

namespace {
constexpr std::array<std::string_view, kObservationFnCount> kFnNames{"connections", "files_user", "files_root",
                                                                    "n_servers", "root_access_levels"};
}

std::string_view success_name(Success s) noexcept {
    switch (s) {
    case Success::True: return "TRUE";
    case Success::False: return "FALSE";
    case Success::Unknown: return "UNKNOWN";
    }
    return "?";
}

std::optional<Success> parse_success(std::string_view text) noexcept {
    if (text == "TRUE") return Success::True;
    if (text == "FALSE") return Success::False;
    if (text == "UNKNOWN") return Success::Unknown;
    return std::nullopt;
}

std::string_view observation_fn_name(ObservationFn fn) noexcept { return kFnNames[static_cast<std::size_t>(fn)]; }

std::optional<ObservationFn> find_observation_fn(std::string_view name) noexcept {
    for (std::size_t i = 0; i < kFnNames.size(); ++i)
        if (kFnNames[i] == name) return static_cast<ObservationFn>(i);
    return std::nullopt;
}

} // namespace cyberevo::sim
