#pragma once

namespace polardet {

inline constexpr const char* kVersion = "0.1.0";

}
