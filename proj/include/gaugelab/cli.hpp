#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gaugelab::cli {

// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kMalformedInput = 1,  // bad flags, bad descriptors, invalid parameters
  kDomainError = 2,     // OutsideDomain, OnSolenoidShell, PathTouchesAxis, FieldSingularOnSurface
  kNoConvergence = 3,   // quadrature or inner-loop solve failed to converge
  kIoError = 4,         // output file could not be written
};

// Runs one command line (without the program name). Results go to `out` or
// to the --out file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count for parallel sweeps: hardware concurrency, capped by the
// GHL_THREADS environment variable when it holds a positive integer.
unsigned thread_budget();

// Rounds to 12 significant digits, the precision of all emitted numbers.
double round_significant(double x);

}  // namespace gaugelab::cli
