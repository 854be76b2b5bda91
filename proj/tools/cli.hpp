#pragma once

#include <iosfwd>

namespace shotnoise::cli {

/// Exit codes: 0 success, 1 validation error (bad config, net profit
/// violation, no root, failed invariant), 2 runtime error (max_events,
/// unruined importance-sampling path).
enum ExitCode : int { kOk = 0, kValidation = 1, kRuntime = 2 };

/// Entry point for the `shotnoise` executable. Machine output goes to `out`
/// (or the --out file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace shotnoise::cli
