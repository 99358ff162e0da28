#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace bvcalc {

// Exit codes: 0 ok, 1 validation error, 2 internal invariant breach.
struct CommandResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

// argv without the program name.
CommandResult run(const std::vector<std::string>& argv);

struct GoldenCase {
    std::string id;
    std::vector<std::string> tags;
    std::vector<std::string> argv;
    std::string expected; // output lines joined by " ; ", or exit=N
    int line = 0;
};

// Lines "id | tags | command | expected"; '#' starts a comment line.
std::vector<GoldenCase> parse_corpus(std::string_view text);
std::string_view builtin_corpus();

} // namespace bvcalc
