#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace monadcoh::cli {

// Exit codes: 0 success/true/verified, 1 property false or not split,
// 2 invalid input, 3 inconclusive verdict.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace monadcoh::cli
