#pragma once

namespace lrc {

// Full command-line surface of the bench tool; returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace lrc
