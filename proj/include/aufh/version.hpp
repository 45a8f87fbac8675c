#pragma once

namespace aufh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace aufh
