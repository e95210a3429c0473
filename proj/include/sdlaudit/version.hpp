// version.hpp
#pragma once

#include <string_view>

namespace sdlaudit {

inline constexpr std::string_view tool_version = "0.1.0";

}  // namespace sdlaudit
