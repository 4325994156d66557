#pragma once

namespace unicrit {

inline constexpr const char* kVersion = "0.1.0";

} // namespace unicrit
