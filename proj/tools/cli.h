#ifndef QAPNET_TOOLS_CLI_H_
#define QAPNET_TOOLS_CLI_H_

#include <ostream>

namespace qapnet::cli {

// Exit statuses besides 0 (success) and CLI11's own parse codes.
inline constexpr int kInputError = 2;
inline constexpr int kEstimationError = 3;

// Runs the `qapnet` command line. Normal output goes to `out`, diagnostics
// to `err`.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qapnet::cli

#endif  // QAPNET_TOOLS_CLI_H_
