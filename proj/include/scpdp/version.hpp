#pragma once

namespace scpdp {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace scpdp
