#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace seclab::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kNumeric = 3,
  kViolation = 4,
  kIo = 5,
};

// Entry point shared by the executable and the tests; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Worker count: hardware concurrency capped by SECRETARY_LAB_THREADS.
unsigned default_threads();

}  // namespace seclab::cli
