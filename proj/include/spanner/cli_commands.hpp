#pragma once

#include <string>
#include <vector>

namespace spanner {

// Exit codes: 0 ok, 2 usage/invalid parameters, 3 probabilistic failure
// (hitting-set retries exhausted), 4 verification failure.
int run_cli(const std::vector<std::string>& args);

}  // namespace spanner
