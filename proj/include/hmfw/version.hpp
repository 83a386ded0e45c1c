#ifndef HMFW_VERSION_HPP
#define HMFW_VERSION_HPP

namespace hmfw {
inline constexpr const char* kEngineName = "hmfw";
inline constexpr const char* kEngineVersion = "0.1.0";
} // namespace hmfw

#endif
