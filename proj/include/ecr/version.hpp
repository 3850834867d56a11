#pragma once

#include <string_view>

namespace ecr {
inline constexpr std::string_view kVersion = "1.0.0";
}
