#ifndef HSO_VERSION_HPP
#define HSO_VERSION_HPP

namespace hso {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace hso

#endif  // HSO_VERSION_HPP
