#pragma once

#include <iosfwd>

// Prints one line per check; true when all pass.
bool run_selftest(std::ostream& out, bool with_shortening);
