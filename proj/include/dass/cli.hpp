#pragma once

namespace dass {

// Full command-line front end (simulate / sweep / schedule / energy / synth).
// Returns the process exit code; errors go to stderr.
int cli_main(int argc, const char* const* argv);

}  // namespace dass
