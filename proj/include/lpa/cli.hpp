#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace lpa {

// Exit status 0 on success, 1 when `verify` finds a failing identity, and the
// ErrorKind value otherwise; errors are reported as one JSON line on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lpa
