#ifndef N4CK_CLI_HPP
#define N4CK_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace n4ck {

// Exit code convention: 0 success/valid/OK, 1 refuted/countermodel-found/
// check-failed (diagnostics on stdout), 2 usage or I/O errors (stderr).
int runCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace n4ck

#endif
