#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ipr {

// Full command-line surface. args excludes the program name. Exit codes:
// 0 success/prime/valid, 2 composite/invalid certificate, 3 probabilistic
// composite verdict, 1 usage or internal error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ipr
