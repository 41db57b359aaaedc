#pragma once

namespace fracsteady {

// Command-line front end: parses flags + config, dispatches the subcommand,
// and returns the process exit code (0 pass, 1 numerical failure, 2 usage).
int run_cli(int argc, const char* const* argv);

// Seed for randomized verification vectors: FRACSTEADY_SEED env or a fixed
// default; the deterministic core never consumes randomness.
unsigned long long verification_seed();

}  // namespace fracsteady
