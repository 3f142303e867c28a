#pragma once

namespace ideaforge {

/// Entry point behind tools/main.cpp. Routes to the subcommands
/// {ingest, generate, tournament, judge, refine, adapt, screen, optimize,
/// report, select, export}. Returns the process exit code: 0 on success,
/// 1 on pipeline errors, 2 on usage errors.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace ideaforge
