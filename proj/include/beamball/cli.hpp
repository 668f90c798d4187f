#pragma once

#include <string>
#include <vector>

namespace beamball {

// Subcommand dispatch: analyze | simulate | domain | basin | search.
// args excludes the program name. Returns 0 on success, 2 on config or
// usage errors, 3 on numeric failures.
int run_subcommand(const std::vector<std::string>& args);

}  // namespace beamball
