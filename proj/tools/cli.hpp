// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fks::cli {

enum ExitCode : int {
  kOk = 0,
  kContractViolation = 1,
  kConfigError = 2,
  kBlowUp = 3,
};

// args excludes the program name, e.g. {"simulate", "--config", "c.json", "--out", "runs/x"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fks::cli
