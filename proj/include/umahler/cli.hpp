#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace umahler {

// Runs the command line interface on args (program name excluded).
// Exit status: 0 ok, 1 domain error, 2 usage error, 3 resource-guard trip.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace umahler
