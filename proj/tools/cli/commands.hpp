#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kgraph/monoid.hpp"

namespace kg::cli {

enum ExitCode : int { Ok = 0, ParseFailure = 1, Invalid = 2, AnswerNo = 3, AnswerUnknown = 4, StrictUnknown = 5 };

/// Environment variable holding default bounds, e.g. "push=16,depth=20,box=4".
inline constexpr const char* bounds_env = "KGRAPH_BOUNDS";

/// Parses "key=value" pairs separated by commas; throws ParseError on unknown keys.
Bounds parse_bounds(const std::string& spec, Bounds base = {});

/// Runs one invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kg::cli
