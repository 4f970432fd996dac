// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace owcrs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Entry point of the `owcrs` tool: sweep-snr, sweep-waist, eval, validate.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace owcrs
