#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperdeg {

// args excludes the program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace hyperdeg
