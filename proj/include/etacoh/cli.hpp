#pragma once

// Command-line front end. Verbs: eta, order, span, restrict, nf, basis, sq,
// wu, push, verify, table. Exit status 0 on success, 1 on computation errors
// or failing claims, 2 on usage errors.

#include <ostream>
#include <string>
#include <vector>

namespace etacoh {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace etacoh
