#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gseq::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kError = 1;
inline constexpr int kBudget = 2;
inline constexpr int kDisagree = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gseq::cli
