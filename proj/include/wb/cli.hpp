#pragma once

#include <string>
#include <vector>

namespace wb::cli {

// Entry point behind the wblab binary; also callable in-process from tests.
// Exit codes: 0 ok, 1 usage/config error, 2 infinite energy, 3 infeasible
// search.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace wb::cli
