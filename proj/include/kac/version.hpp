#pragma once

#define KAC_VERSION_STRING "0.1.0"

namespace kac {

inline const char* version() { return KAC_VERSION_STRING; }

} // namespace kac
