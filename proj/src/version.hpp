// version.hpp — library version string embedded in every dataset.
#pragma once

namespace dcesim {

inline constexpr const char* version = "0.1.0";

}  // namespace dcesim
