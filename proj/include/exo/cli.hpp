#pragma once

#include <string>
#include <vector>

namespace exo::cli {

// Exit codes: 0 success, 1 domain/computation error, 2 usage error.
// Errors go to stderr as "exokit: error [<code>]: <message>".
int dispatch(int argc, const char* const* argv);
int dispatch(const std::vector<std::string>& args); // args without argv[0]

} // namespace exo::cli
