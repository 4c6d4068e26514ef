#pragma once

namespace kzfront {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kzfront
