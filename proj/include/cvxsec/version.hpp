#pragma once

namespace cvxsec {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cvxsec
