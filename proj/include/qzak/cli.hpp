#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace qzak {

/// Exit codes of the command line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point of the `qzak` tool:
///   qzak <simulate|sweep|layer-decay|oracle-check|self-converge|version>
///        [--config PATH] [--out DIR] [--override key=value]... [--quiet]
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qzak
