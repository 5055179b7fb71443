#pragma once

// invariant battery behind the `verify` subcommand; returns the number of
// failed checks and prints one line per check
int run_verify_suite();
