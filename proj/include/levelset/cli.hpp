#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levelset::cli {

/// Process exit codes. They are part of the command-line contract.
enum ExitCode : int {
  kUnique = 0,
  kPass = 0,
  kFail = 1,
  kInputError = 2,
  kResourceLimit = 3,
  kNonUnique = 10,
  kInconsistent = 70,
};

/// Runs one command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Regression over the built-in examples, one line per check. Returns the failure count.
int selftest(std::ostream& out);

}  // namespace levelset::cli
