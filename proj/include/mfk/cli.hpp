// SPDX-License-Identifier: MIT
#pragma once

namespace mfk {

/// Entry point of the command-line tool. Returns the process exit code:
/// 0 on success, 1 on runtime errors, 2 on usage errors.
int cli_main(int argc, const char* const* argv);

}  // namespace mfk
