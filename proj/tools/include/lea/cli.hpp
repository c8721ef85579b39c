// Command-line front end. `run` is the whole program minus process setup, so
// tests can drive it with in-memory streams.
//
// Exit codes: 0 affirmative verdict, 1 negative or inconclusive verdict,
// 2 usage or input error.

#ifndef LEA_CLI_HPP
#define LEA_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace lea::cli {

inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;
inline constexpr int kUsage = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lea::cli

#endif  // LEA_CLI_HPP
