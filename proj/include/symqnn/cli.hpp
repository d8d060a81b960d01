#pragma once

namespace symqnn {

/// Entry point behind the `symqnn` binary. Subcommands: generate, train,
/// evaluate, bp-scan, report. Returns 0 on success, 2 on usage errors,
/// 1 on runtime failures.
int run_cli(int argc, const char* const* argv);

}  // namespace symqnn
