#pragma once

#include <ostream>

namespace baker {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // verify found a failing invariant, or other errors
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitIo = 74;

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace baker
